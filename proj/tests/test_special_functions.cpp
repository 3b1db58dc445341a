#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "signcorr/special_functions.hpp"

using namespace signcorr;
using namespace signcorr::special;

namespace {

// Physicists' H_n(t) by explicit coefficients, n <= 12.
long double hermite_poly(int n, long double t)
{
    std::vector<long double> prev{1.0L}, cur{0.0L, 2.0L};
    if (n == 0) return 1.0L;
    for (int k = 1; k < n; ++k) {
        std::vector<long double> next(k + 2, 0.0L);
        for (int i = 0; i <= k; ++i) next[i + 1] += 2.0L * cur[i];
        for (int i = 0; i <= k - 1; ++i) next[i] -= 2.0L * k * prev[i];
        prev = cur;
        cur = next;
    }
    long double v = 0.0L;
    for (int i = n; i >= 0; --i) v = v * t + cur[i];
    return v;
}

long double factorial(int n)
{
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

long double psi_oracle(int n, long double t)
{
    const long double norm = std::sqrt(std::pow(2.0L, n) * factorial(n) * std::sqrt(std::numbers::pi_v<long double>));
    return hermite_poly(n, t) * std::exp(-t * t / 2.0L) / norm;
}

// L_n^nu(z) = sum_k (-1)^k binom(n + nu, n - k) z^k / k!
long double laguerre_oracle(int n, long double nu, long double z)
{
    long double sum = 0.0L;
    for (int k = 0; k <= n; ++k) {
        long double binom = std::tgamma(n + nu + 1.0L) / (std::tgamma(n - k + 1.0L) * std::tgamma(nu + k + 1.0L));
        sum += (k % 2 ? -1.0L : 1.0L) * binom * std::pow(z, k) / factorial(k);
    }
    return sum;
}

Sign sign_of_value(long double v) { return v > 0 ? Sign::positive : (v < 0 ? Sign::negative : Sign::zero); }

} // namespace

TEST_CASE("hermite functions match explicit polynomials")
{
    for (double t : {-3.1, -0.7, 0.0, 0.4, 1.9, 4.2}) {
        const auto values = hermite_functions(t, 13);
        for (int n = 0; n <= 12; ++n)
            CHECK(values[n] == doctest::Approx(static_cast<double>(psi_oracle(n, t))).epsilon(1e-12).scale(1e-15));
    }
}

TEST_CASE("scaled hermite eigenfunctions are orthonormal in L2(dx)")
{
    const int m = 6000;
    const double a = 4.0;
    const double h = 2.0 * a / m;
    for (int i = 0; i < 6; ++i)
        for (int j = i; j < 6; ++j) {
            double s = 0.0;
            for (int k = 0; k <= m; ++k) {
                const double x = -a + k * h;
                const double w = (k == 0 || k == m) ? 0.5 : 1.0;
                s += w * hermite_eigenfunction(i, x) * hermite_eigenfunction(j, x);
            }
            CHECK(s * h == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9).scale(1.0));
        }
}

TEST_CASE("hermite sign stream equals signs of directly evaluated functions")
{
    for (double x : {0.3, -0.45, 1.1, 2.0}) {
        const HermitePoint point(x);
        const auto values = hermite_functions(point.t(), 300);
        const auto stream = hermite_sign_sequence(point, 300);
        for (int n = 0; n < 300; ++n) {
            if (std::abs(values[n]) < 1e-200) continue;
            CHECK(stream.signs[n] == sign_of_value(values[n]));
        }
    }
}

TEST_CASE("hermite parity, seek and long streams")
{
    const auto plus = hermite_sign_sequence(HermitePoint(0.37), 2000);
    const auto minus = hermite_sign_sequence(HermitePoint(-0.37), 2000);
    for (int n = 0; n < 2000; ++n) CHECK(minus.signs[n] == (n % 2 ? -plus.signs[n] : plus.signs[n]));

    HermiteSignSequence seq(HermitePoint(0.37));
    seq.seek(1234);
    CHECK(seq.index() == 1234);
    for (int n = 1234; n < 1300; ++n) CHECK(seq.next() == plus.signs[n]);
    auto copy = seq.clone();
    CHECK(copy->next() == seq.next());

    // Odd functions vanish at the origin.
    const auto origin = hermite_sign_sequence(HermitePoint(0.0), 10);
    CHECK(origin.zero_hits == std::vector<std::uint64_t>{1, 3, 5, 7, 9});

    // Deep into the oscillatory range the recurrence neither overflows nor stalls.
    const auto deep = hermite_sign_sequence(HermitePoint(0.3), 1000000);
    CHECK(deep.zero_hits.empty());
    std::size_t changes = 0;
    for (std::size_t n = 1; n < deep.signs.size(); ++n) changes += deep.signs[n] != deep.signs[n - 1];
    CHECK(changes > 400000);
    CHECK_THROWS_AS(hermite_sign_sequence(HermitePoint(0.3), 0), std::invalid_argument);
}

TEST_CASE("laguerre recurrence matches the explicit sum")
{
    for (double nu : {-0.5, 0.0, 0.5, 2.0})
        for (double z : {0.05, 0.7, 3.0}) {
            const auto values = laguerre_polynomials(nu, z, 10);
            for (int n = 0; n < 10; ++n)
                CHECK(values[n] == doctest::Approx(static_cast<double>(laguerre_oracle(n, nu, z))).epsilon(1e-11).scale(1e-13));
        }
}

TEST_CASE("laguerre parameters and sign stream")
{
    const auto p3 = LaguerreParams::from_dimension(3, 0.5);
    CHECK(p3.nu() == 0.5);
    CHECK(p3.z() == doctest::Approx(2.0 * std::numbers::pi * 0.25));
    CHECK(LaguerreParams::from_dimension(2, 1.0).nu() == 0.0);
    CHECK_THROWS_AS(LaguerreParams::from_radius(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(LaguerreParams::from_argument(0.5, 0.0), std::invalid_argument);

    const auto params = LaguerreParams::from_dimension(3, 0.8);
    const auto values = laguerre_polynomials(params.nu(), params.z(), 150);
    const auto stream = laguerre_sign_sequence(params, 150);
    for (int n = 0; n < 150; ++n) CHECK(stream.signs[n] == sign_of_value(values[n]));

    LaguerreSignSequence seq(params);
    seq.seek(100);
    for (int n = 100; n < 150; ++n) CHECK(seq.next() == stream.signs[n]);
    CHECK(laguerre_sign_sequence(LaguerreParams::from_dimension(3, 0.5), 1000000).zero_hits.empty());
}

TEST_CASE("chebyshev angles respect the open interval (0, 1/2)")
{
    CHECK_THROWS_AS(AngleFraction(Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(AngleFraction(Rational(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(AngleFraction(Rational(3, 4)), std::invalid_argument);
    CHECK_THROWS_AS(AngleFraction(Rational(1, 4)).scaled(3), std::invalid_argument);
    CHECK(AngleFraction(Rational(1, 10)).scaled(3).rational() == Rational(3, 10));
    CHECK(AngleFraction(Rational(1, 10)).str() == "1/10");
}

TEST_CASE("chebyshev signs follow cos(2 pi n a)")
{
    const auto rational = chebyshev_sign_sequence(AngleFraction(Rational(1, 10)), 1000);
    for (int n = 0; n < 1000; ++n)
        CHECK(rational.signs[n] == sign_of_value(std::cos(2.0L * std::numbers::pi_v<long double> * n / 10.0L)));

    // a = 1/8: T_n vanishes at n = 2 mod 4.
    const auto eighth = chebyshev_sign_sequence(AngleFraction(Rational(1, 8)), 40);
    CHECK(eighth.zero_hits.size() == 10);
    for (auto i : eighth.zero_hits) CHECK(i % 4 == 2);

    const long double a = (std::sqrt(5.0L) - 1.0L) / 8.0L;
    const auto irrational = chebyshev_sign_sequence(AngleFraction(FixedPointFraction::from_quadratic_surd(-1, 1, 5, 8)), 20000);
    CHECK(irrational.zero_hits.empty());
    int checked = 0;
    for (int n = 0; n < 20000; ++n) {
        const long double c = std::cos(2.0L * std::numbers::pi_v<long double> * n * a);
        if (std::abs(c) < 1e-12L) continue;
        CHECK(irrational.signs[n] == sign_of_value(c));
        ++checked;
    }
    CHECK(checked > 19990);

    ChebyshevSignSequence seq(AngleFraction(Rational(1, 10)));
    CHECK(seq.random_access());
    seq.seek(987);
    CHECK(seq.next() == rational.signs[987]);
}
