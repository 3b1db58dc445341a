#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numbers>

#include "signcorr/eigenpair_io.hpp"
#include "signcorr/schrodinger.hpp"
#include "signcorr/special_functions.hpp"

using namespace signcorr;
using namespace signcorr::schrodinger;

namespace {

const EigenpairSet& harmonic_set()
{
    static const EigenpairSet set = [] {
        SolverConfig cfg;
        cfg.n_max = 30;
        return solve_eigenpairs(PotentialSpec({0.0, 1.0}), cfg);
    }();
    return set;
}

double exact_harmonic(int n) { return (2.0 * n + 1.0) / (2.0 * std::numbers::pi); }

} // namespace

TEST_CASE("potential coefficients are validated and trimmed")
{
    CHECK_THROWS_AS(PotentialSpec({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PotentialSpec({0.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PotentialSpec({0.0, 0.0}), std::invalid_argument);
    const PotentialSpec v({1.0, 0.0, 2.0, 0.0});
    CHECK(v.coefficients().size() == 3);
    CHECK(v(1.5) == doctest::Approx(1.0 + 2.0 * std::pow(1.5, 4)));
    CHECK(v(-1.5) == v(1.5));
}

TEST_CASE("semiclassical estimate is exact for the harmonic potential")
{
    const PotentialSpec v({0.0, 1.0});
    for (int n : {0, 1, 7, 50}) CHECK(semiclassical_eigenvalue(v, n) == doctest::Approx(exact_harmonic(n)).epsilon(1e-8));
}

TEST_CASE("harmonic oscillator eigenvalues and structure")
{
    const EigenpairSet& set = harmonic_set();
    REQUIRE(set.pairs.size() == 31);
    for (const auto& p : set.pairs) {
        CHECK(std::abs(p.lambda - exact_harmonic(p.n)) / exact_harmonic(p.n) <= 1e-6);
        CHECK(p.parity == (p.n % 2 ? Parity::odd : Parity::even));
        CHECK(p.interior_nodes() == p.n / 2);
        // Normalized over the whole line: twice the half-line integral.
        double s = 0.0;
        for (std::size_t k = 0; k < p.values.size(); ++k) {
            const double w = (k == 0 || k + 1 == p.values.size()) ? 0.5 : 1.0;
            s += w * p.values[k] * p.values[k];
        }
        CHECK(2.0 * s * p.step == doctest::Approx(1.0).epsilon(1e-6));
        const int m = p.n / 2;
        const double lead = p.parity == Parity::even ? p.w0 : p.dw0;
        CHECK((lead > 0) == (m % 2 == 0));
    }
}

TEST_CASE("solved harmonic eigenfunctions match the closed-form hermite functions")
{
    const EigenpairSet& set = harmonic_set();
    for (int n : {0, 3, 10}) {
        const Eigenpair& p = set.pairs[n];
        double scale_num = 0.0, scale_den = 0.0;
        for (std::size_t k = 0; k < p.values.size(); ++k) {
            const double ref = special::hermite_eigenfunction(n, k * p.step);
            scale_num += ref * p.values[k];
            scale_den += ref * ref;
        }
        const double amp = scale_num / scale_den;
        CHECK(amp == doctest::Approx(1.0).epsilon(1e-5));
        double worst = 0.0, peak = 0.0;
        for (std::size_t k = 0; k < p.values.size(); ++k) {
            const double ref = special::hermite_eigenfunction(n, k * p.step);
            worst = std::max(worst, std::abs(p.values[k] - amp * ref));
            peak = std::max(peak, std::abs(ref));
        }
        CHECK(worst / peak <= 1e-5);
        CHECK(p.value_at(-0.3) == doctest::Approx(n % 2 ? -p.value_at(0.3) : p.value_at(0.3)));
    }
}

TEST_CASE("distinct harmonic eigenfunctions are orthogonal")
{
    const EigenpairSet& set = harmonic_set();
    // Same-parity pairs on the half line; opposite parities vanish by symmetry.
    double worst = 0.0;
    for (const auto& a : set.pairs)
        for (const auto& b : set.pairs) {
            if (b.n <= a.n || a.parity != b.parity) continue;
            double s = 0.0;
            for (std::size_t k = 0; k < a.values.size(); ++k) {
                const double w = (k == 0 || k + 1 == a.values.size()) ? 0.5 : 1.0;
                s += w * a.values[k] * b.values[k];
            }
            worst = std::max(worst, std::abs(2.0 * s * a.step));
        }
    CHECK(worst <= 1e-6);
}

TEST_CASE("eigenvalues increase and the parity classes interlace")
{
    // Sorted by value the parities alternate even, odd, even, ...
    const auto& pairs = harmonic_set().pairs;
    for (std::size_t n = 1; n < pairs.size(); ++n) {
        CHECK(pairs[n].lambda > pairs[n - 1].lambda);
        CHECK(pairs[n].parity != pairs[n - 1].parity);
    }
}

TEST_CASE("halving the grid step moves eigenvalues by less than 1e-5 relative")
{
    SolverConfig coarse;
    coarse.n_max = 20;
    SolverConfig fine = coarse;
    fine.points_per_wavelength = 2.0 * coarse.points_per_wavelength;
    const auto a = solve_eigenpairs(PotentialSpec({0.0, 1.0}), coarse);
    const auto b = solve_eigenpairs(PotentialSpec({0.0, 1.0}), fine);
    CHECK(b.step == doctest::Approx(a.step / 2.0).epsilon(0.05));
    for (int n = 0; n <= 20; ++n) CHECK(std::abs(a.pairs[n].lambda - b.pairs[n].lambda) / b.pairs[n].lambda < 1e-5);
}

TEST_CASE("solved harmonic signs at (0.3, 1.5) and (0.3, -0.3)")
{
    SolverConfig cfg;
    cfg.n_max = 199;
    auto set = std::make_shared<const EigenpairSet>(solve_eigenpairs(PotentialSpec({0.0, 1.0}), cfg));
    auto src = eigenpair_sign_source(set, 0.3, 1.5);
    std::uint64_t agree = 0;
    for (int n = 0; n < 200; ++n) {
        const SignPair s = src->next();
        agree += s.x != Sign::zero && s.x == s.y;
    }
    CHECK(std::abs(agree / 200.0 - 0.6) <= 0.1);

    auto plus = eigenpair_sign_sequence(set, 0.3);
    auto minus = eigenpair_sign_sequence(set, -0.3);
    for (int n = 0; n < 200; ++n) {
        const Sign s = plus->next();
        CHECK(minus->next() == (n % 2 ? -s : s));
    }
}

TEST_CASE("quartic ground state matches the rescaled anharmonic constant even for a tiny solve")
{
    // -u'' + u^4 has ground energy 1.0603620905; x = (4 pi^2)^(-1/6) u maps it onto H_V.
    const double expected = 1.0603620905 * std::pow(4.0 * std::numbers::pi * std::numbers::pi, -2.0 / 3.0);
    for (int n_max : {0, 3, 40}) {
        SolverConfig cfg;
        cfg.n_max = n_max;
        const auto set = solve_eigenpairs(PotentialSpec({0.0, 0.0, 1.0}), cfg);
        CHECK(std::abs(set.pairs[0].lambda - expected) / expected <= 1e-8);
    }
}

TEST_CASE("wkb residual shrinks with n")
{
    SolverConfig cfg;
    cfg.n_max = 100;
    const EigenpairSet set = solve_eigenpairs(PotentialSpec({0.0, 0.0, 1.0}), cfg);
    const double r25 = wkb_residual(set.pairs[25], 1.0);
    const double r100 = wkb_residual(set.pairs[100], 1.0);
    CHECK(r100 < r25);
    CHECK_THROWS_AS(wkb_residual(set.pairs[25], set.domain_length * 2.0), std::invalid_argument);
}

TEST_CASE("solver failures surface as numerical errors")
{
    SolverConfig cfg;
    cfg.n_max = 5;
    cfg.max_bisection_iterations = 3;
    CHECK_THROWS_AS(solve_eigenpairs(PotentialSpec({0.0, 1.0}), cfg), NumericalError);
    try {
        solve_eigenpairs(PotentialSpec({0.0, 1.0}), cfg);
    } catch (const NumericalError& e) {
        CHECK(e.index() >= 0);
        CHECK(e.index() <= 5);
    }
    SolverConfig bad;
    bad.n_max = -1;
    CHECK_THROWS_AS(solve_eigenpairs(PotentialSpec({0.0, 1.0}), bad), std::invalid_argument);
}

TEST_CASE("eigenpair sign streams")
{
    auto set = std::make_shared<const EigenpairSet>(harmonic_set());
    auto seq = eigenpair_sign_sequence(set, 0.4);
    const auto reference = special::hermite_sign_sequence(special::HermitePoint(0.4), 31);
    for (int n = 0; n < 31; ++n) CHECK(seq->next() == reference.signs[n]);
    CHECK_THROWS_AS(seq->next(), SourceError);
    CHECK_THROWS_AS(eigenpair_sign_sequence(set, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(eigenpair_sign_sequence(set, 1e3), std::invalid_argument);
    CHECK(seq->random_access());
}

TEST_CASE("eigenpair cache round trip")
{
    const EigenpairSet& set = harmonic_set();
    const auto path = std::filesystem::temp_directory_path() / "signcorr_test_eigenpairs.json";
    const std::string hash = save_eigenpairs(set, path);
    const LoadedEigenpairs loaded = load_eigenpairs(path);
    CHECK(loaded.content_hash == hash);
    CHECK(hash.size() == 16);
    REQUIRE(loaded.set.pairs.size() == set.pairs.size());
    for (std::size_t i = 0; i < set.pairs.size(); ++i) {
        CHECK(loaded.set.pairs[i].lambda == set.pairs[i].lambda);
        CHECK(loaded.set.pairs[i].values == set.pairs[i].values);
    }
    CHECK(save_eigenpairs(loaded.set, path) == hash);

    {
        std::ofstream f(path);
        f << R"({"format": "something-else", "version": 1})";
    }
    CHECK_THROWS_AS(load_eigenpairs(path), std::invalid_argument);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_eigenpairs(path), std::invalid_argument);
}
