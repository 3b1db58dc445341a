#include "signcorr/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "signcorr/parallel.hpp"

namespace signcorr::schrodinger {

namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;
constexpr double kGrow = 1e200;
constexpr double kShrink = 1e-200;

// Uniform grid on [0, L] with the potential sampled at every node.
class Shooter {
public:
    Shooter(const PotentialSpec& v, double length, std::size_t steps)
        : h_(length / static_cast<double>(steps)), potential_(steps + 1)
    {
        for (std::size_t k = 0; k <= steps; ++k) potential_[k] = v(h_ * static_cast<double>(k));
        c_ = h_ * h_ * kFourPiSq / 12.0;
    }

    double step() const { return h_; }
    std::size_t last() const { return potential_.size() - 1; }
    double vmin() const { return *std::min_element(potential_.begin(), potential_.end()); }

    // Numerov weight 1 + h^2 f_k / 12 with f = 4 pi^2 (lambda - V).
    double g(double lambda, std::size_t k) const { return 1.0 + c_ * (lambda - potential_[k]); }

    // Starting values from w(0) = 1, w'(0) = 0 (even) or w(0) = 0, w'(0) = 1 (odd).
    std::pair<double, double> start(double lambda, Parity parity) const
    {
        if (parity == Parity::even) {
            // Mirror condition y_{-1} = y_1.
            return {1.0, (12.0 - 10.0 * g(lambda, 0)) / (2.0 * g(lambda, 1))};
        }
        const double f0 = kFourPiSq * (lambda - potential_[0]);
        return {0.0, h_ * (1.0 - f0 * h_ * h_ / 6.0)};
    }

    double odd_slope_factor(double lambda) const
    {
        const double f0 = kFourPiSq * (lambda - potential_[0]);
        return h_ * (1.0 - f0 * h_ * h_ / 6.0);
    }

    // Sign changes of the outward solution on (0, L].
    int count_nodes(double lambda, Parity parity) const
    {
        auto [y0, y1] = start(lambda, parity);
        double prev = y0;
        double cur = y1;
        int nodes = 0;
        double last_sign = parity == Parity::even ? 1.0 : std::copysign(1.0, y1);
        if (cur != 0.0 && std::copysign(1.0, cur) != last_sign) {
            ++nodes;
            last_sign = -last_sign;
        }
        double g_prev = g(lambda, 0);
        double g_cur = g(lambda, 1);
        const std::size_t m = last();
        for (std::size_t k = 1; k < m; ++k) {
            const double g_next = g(lambda, k + 1);
            double next = ((12.0 - 10.0 * g_cur) * cur - g_prev * prev) / g_next;
            prev = cur;
            cur = next;
            g_prev = g_cur;
            g_cur = g_next;
            if (std::abs(cur) > kGrow) {
                prev *= kShrink;
                cur *= kShrink;
            }
            if (cur != 0.0 && std::copysign(1.0, cur) != last_sign) {
                ++nodes;
                last_sign = -last_sign;
            }
        }
        return nodes;
    }

    // Outward solution matched at the outermost classical turning point to
    // an inward solution vanishing at L.
    std::vector<double> eigenfunction(double lambda, Parity parity, int index) const
    {
        const std::size_t m_end = last();
        std::size_t turn = m_end;
        while (turn > 0 && potential_[turn] >= lambda) --turn;
        if (turn + 2 >= m_end)
            throw NumericalError("classically allowed region reaches the end of the domain", index, lambda);
        turn = std::max<std::size_t>(turn, 2);

        std::vector<double> y(m_end + 1, 0.0);
        auto [y0, y1] = start(lambda, parity);
        y[0] = y0;
        y[1] = y1;
        for (std::size_t k = 1; k < turn; ++k) {
            y[k + 1] = ((12.0 - 10.0 * g(lambda, k)) * y[k] - g(lambda, k - 1) * y[k - 1]) / g(lambda, k + 1);
            if (std::abs(y[k + 1]) > kGrow)
                for (std::size_t j = 0; j <= k + 1; ++j) y[j] *= kShrink;
        }

        std::vector<double> in(m_end + 1, 0.0);
        in[m_end] = 0.0;
        in[m_end - 1] = 1.0;
        for (std::size_t k = m_end - 1; k > turn; --k) {
            in[k - 1] = ((12.0 - 10.0 * g(lambda, k)) * in[k] - g(lambda, k + 1) * in[k + 1]) / g(lambda, k - 1);
            if (std::abs(in[k - 1]) > kGrow)
                for (std::size_t j = k - 1; j <= m_end; ++j) in[j] *= kShrink;
        }

        std::size_t match = turn;
        while (match > 1 && (in[match] == 0.0 || y[match] == 0.0)) --match;
        if (in[match] == 0.0 || y[match] == 0.0)
            throw NumericalError("cannot match inward and outward solutions", index, lambda);
        const double scale = y[match] / in[match];
        for (std::size_t k = match + 1; k <= m_end; ++k) y[k] = in[k] * scale;
        return y;
    }

private:
    double h_;
    double c_ = 0.0;
    std::vector<double> potential_;
};

double bisect_eigenvalue(const Shooter& shooter, int n, double guess, const SolverConfig& cfg)
{
    const Parity parity = n % 2 == 0 ? Parity::even : Parity::odd;
    const int k = n / 2;

    double lo = shooter.vmin();
    const double trial_lo = lo + 0.8 * (guess - lo);
    if (shooter.count_nodes(trial_lo, parity) <= k) lo = trial_lo;

    double hi = lo + 1.25 * (guess - lo) + 1.0;
    for (int grow = 0; shooter.count_nodes(hi, parity) <= k; ++grow) {
        if (grow > 60) throw NumericalError("no upper eigenvalue bracket", n, hi);
        hi = lo + 2.0 * (hi - lo);
    }

    for (int it = 0;; ++it) {
        const double width = hi - lo;
        if (width <= cfg.eigenvalue_tolerance * std::max(std::abs(lo), std::abs(hi))) break;
        if (it >= cfg.max_bisection_iterations)
            throw NumericalError("eigenvalue bisection did not converge within the iteration cap", n, 0.5 * (lo + hi));
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (shooter.count_nodes(mid, parity) <= k)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Eigenpair build_pair(const Shooter& shooter, int n, double lambda)
{
    const Parity parity = n % 2 == 0 ? Parity::even : Parity::odd;
    std::vector<double> y = shooter.eigenfunction(lambda, parity, n);
    const double h = shooter.step();

    // Trapezoid rule on the symmetric grid over [-L, L].
    long double norm_sq = static_cast<long double>(y[0]) * y[0];
    for (std::size_t k = 1; k < y.size(); ++k) norm_sq += 2.0L * static_cast<long double>(y[k]) * y[k];
    norm_sq *= h;
    double scale = 1.0 / std::sqrt(static_cast<double>(norm_sq));

    const int m = n / 2;
    const double wanted = m % 2 == 0 ? 1.0 : -1.0;
    const double leading = parity == Parity::even ? y[0] : y[1];
    if (std::copysign(1.0, leading) != wanted) scale = -scale;
    for (double& v : y) v *= scale;

    Eigenpair pair;
    pair.n = n;
    pair.parity = parity;
    pair.lambda = lambda;
    pair.step = h;
    pair.w0 = parity == Parity::even ? y[0] : 0.0;
    pair.dw0 = parity == Parity::odd ? y[1] / shooter.odd_slope_factor(lambda) : 0.0;
    pair.values = std::move(y);

    const int nodes = pair.interior_nodes();
    if (nodes != m)
        throw NumericalError("node count " + std::to_string(nodes) + " differs from expected " + std::to_string(m), n,
                             lambda);
    return pair;
}

// Outermost x with V(x) = target, assuming V(x) -> infinity.
double outer_root(const PotentialSpec& v, double target)
{
    double hi = 1.0;
    while (v(hi) < target) hi *= 2.0;
    // Walk down to the last upward crossing.
    double lo = hi;
    while (lo > 1e-12 && v(lo) >= target) lo *= 0.5;
    if (v(lo) >= target) return 0.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (v(mid) < target ? lo : hi) = mid;
    }
    return hi;
}

// Smallest L past the turning point of lambda with
// integral of 2 pi sqrt(V - lambda) over [x_t, L] >= action, so the
// Dirichlet condition at L sits where w has decayed by about e^-action.
double decay_length(const PotentialSpec& v, double lambda, double action)
{
    const double xt = outer_root(v, lambda);
    const double dx = std::max(xt, 1e-3) * 1e-3;
    double x = xt, s = 0.0;
    while (s < action) {
        const double mid = x + 0.5 * dx;
        s += 2.0 * std::numbers::pi * std::sqrt(std::max(0.0, v(mid) - lambda)) * dx;
        x += dx;
    }
    return x;
}

constexpr double kDecayAction = 20.0;

} // namespace

PotentialSpec::PotentialSpec(std::vector<double> even_coefficients) : coefficients_(std::move(even_coefficients))
{
    while (!coefficients_.empty() && coefficients_.back() == 0.0) coefficients_.pop_back();
    if (coefficients_.size() < 2) throw std::invalid_argument("potential must contain a positive x^(2k) term, k >= 1");
    if (!(coefficients_.back() > 0.0)) throw std::invalid_argument("leading potential coefficient must be positive");
    for (double c : coefficients_)
        if (!std::isfinite(c)) throw std::invalid_argument("potential coefficients must be finite");
}

double PotentialSpec::operator()(double x) const
{
    const double x2 = x * x;
    double acc = 0.0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x2 + *it;
    return acc;
}

std::string PotentialSpec::str() const
{
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (std::size_t k = 0; k < coefficients_.size(); ++k) {
        if (coefficients_[k] == 0.0) continue;
        if (!first) os << " + ";
        os << coefficients_[k];
        if (k > 0) os << " x^" << 2 * k;
        first = false;
    }
    return os.str();
}

double Eigenpair::value_at(double x) const
{
    const double ax = std::abs(x);
    double pos = ax / step;
    auto k = static_cast<std::size_t>(pos);
    if (k >= values.size() - 1) {
        if (pos > static_cast<double>(values.size() - 1) + 1e-9)
            throw std::invalid_argument("point outside the solved domain");
        k = values.size() - 2;
    }
    const double w = pos - static_cast<double>(k);
    double v = (1.0 - w) * values[k] + w * values[k + 1];
    if (x < 0.0 && parity == Parity::odd) v = -v;
    return v;
}

int Eigenpair::interior_nodes() const
{
    int nodes = 0;
    double last = 0.0;
    for (std::size_t k = 1; k + 1 < values.size(); ++k) {
        const double v = values[k];
        if (v == 0.0) continue;
        if (last != 0.0 && std::copysign(1.0, v) != std::copysign(1.0, last)) ++nodes;
        last = v;
    }
    return nodes;
}

std::vector<double> EigenpairSet::eigenvalues() const
{
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back(p.lambda);
    return out;
}

double semiclassical_eigenvalue(const PotentialSpec& v, int n)
{
    const double target = (n + 0.5) / 2.0;
    auto action = [&](double lambda) {
        const double x_end = outer_root(v, lambda);
        if (x_end <= 0.0) return 0.0;
        // x = x_end (1 - s^2) removes the square-root singularity at the
        // turning point, so the midpoint rule converges at second order.
        constexpr int pieces = 4000;
        const double ds = 1.0 / pieces;
        double sum = 0.0;
        for (int i = 0; i < pieces; ++i) {
            const double s = (i + 0.5) * ds;
            const double x = x_end * (1.0 - s * s);
            sum += std::sqrt(std::max(0.0, lambda - v(x))) * 2.0 * x_end * s;
        }
        return 2.0 * sum * ds;
    };
    double lo = v(0.0);
    for (double x = 0.0; x < outer_root(v, std::abs(v(0.0)) + 1.0); x += 1e-3) lo = std::min(lo, v(x));
    double hi = std::abs(lo) + 1.0;
    while (action(hi) < target) hi = lo + 2.0 * (hi - lo);
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (action(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

EigenpairSet solve_eigenpairs(const PotentialSpec& v, const SolverConfig& cfg)
{
    if (cfg.n_max < 0) throw std::invalid_argument("n_max must be non-negative");
    if (!(cfg.points_per_wavelength > 0.0) || !(cfg.domain_margin > 1.0) || !(cfg.eigenvalue_tolerance > 0.0) ||
        cfg.max_bisection_iterations <= 0)
        throw std::invalid_argument("solver configuration values must be positive (domain_margin > 1)");

    const unsigned threads = resolve_threads(cfg.threads);
    std::vector<double> guesses(static_cast<std::size_t>(cfg.n_max) + 1);
    for (int n = 0; n <= cfg.n_max; ++n) guesses[static_cast<std::size_t>(n)] = semiclassical_eigenvalue(v, n);

    double lambda_top = 1.1 * guesses.back();
    for (int attempt = 0; attempt < 4; ++attempt) {
        const double length = std::max(outer_root(v, cfg.domain_margin * std::max(lambda_top, 1e-3)),
                                       decay_length(v, lambda_top, kDecayAction));
        double vmin = v(0.0);
        for (double x = 0.0; x <= length; x += length / 4096.0) vmin = std::min(vmin, v(x));
        // Resolve both the oscillation and the steepest decay near L.
        const double kinetic = std::max({lambda_top, lambda_top - vmin, v(length) - lambda_top});
        const double h_max = 1.0 / (cfg.points_per_wavelength * std::sqrt(kinetic));
        const auto steps = static_cast<std::size_t>(std::ceil(length / h_max));
        Shooter shooter(v, length, std::max<std::size_t>(steps, 16));

        EigenpairSet set{v, length, shooter.step(), {}};
        set.pairs.resize(guesses.size());
        parallel_for(guesses.size(), threads, [&](std::size_t i) {
            const int n = static_cast<int>(i);
            const double lambda = bisect_eigenvalue(shooter, n, guesses[i], cfg);
            set.pairs[i] = build_pair(shooter, n, lambda);
        });

        for (std::size_t i = 1; i < set.pairs.size(); ++i)
            if (!(set.pairs[i].lambda > set.pairs[i - 1].lambda))
                throw NumericalError("eigenvalues are not strictly increasing", static_cast<int>(i),
                                     set.pairs[i].lambda);

        const double top = set.pairs.back().lambda;
        const bool domain_ok = v(length) >= cfg.domain_margin * top;
        const bool grid_ok = shooter.step() <= 1.0 / (cfg.points_per_wavelength * std::sqrt(std::max(top, top - vmin)));
        if (domain_ok && grid_ok) return set;
        lambda_top = 1.1 * top;
    }
    throw NumericalError("domain and grid did not settle", cfg.n_max, lambda_top);
}

double wkb_residual(const Eigenpair& pair, double k)
{
    if (!(k >= 0.0)) throw std::invalid_argument("wkb_residual: K must be non-negative");
    if (k > pair.domain_length() + 1e-12) throw std::invalid_argument("wkb_residual: K exceeds the solved domain");
    const double root = std::sqrt(pair.lambda);
    const double amplitude = std::sqrt(pair.w0 * pair.w0 + pair.dw0 * pair.dw0 / (kFourPiSq * pair.lambda));
    const double phase_shift = static_cast<double>(pair.n % 4) / 4.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < pair.values.size(); ++i) {
        const double x = pair.step * static_cast<double>(i);
        if (x > k + 1e-12) break;
        const double model = amplitude * std::cos(2.0 * std::numbers::pi * (root * x - phase_shift));
        worst = std::max(worst, std::abs(pair.values[i] - model));
    }
    return worst / amplitude;
}

namespace {

class EigenpairSignSequence final : public SignSequence {
public:
    EigenpairSignSequence(std::shared_ptr<const EigenpairSet> set, double x) : set_(std::move(set)), x_(x)
    {
        if (!set_ || set_->pairs.empty()) throw std::invalid_argument("eigenpair sign source: empty eigenpair set");
        if (x == 0.0) throw std::invalid_argument("eigenpair sign source: x must be nonzero");
        const double ax = std::abs(x);
        if (ax > set_->domain_length) throw std::invalid_argument("eigenpair sign source: point outside solved domain");
        const double pos = ax / set_->step;
        cell_ = std::min(static_cast<std::size_t>(pos), set_->pairs.front().values.size() - 2);
        weight_ = pos - static_cast<double>(cell_);
    }

    Sign next() override
    {
        if (n_ >= set_->pairs.size()) throw SourceError("eigenpair index beyond the solved set", n_);
        const Eigenpair& p = set_->pairs[n_];
        const double a = p.values[cell_];
        const double b = p.values[cell_ + 1];
        Sign s;
        if (a != 0.0 && b != 0.0 && (a > 0.0) == (b > 0.0)) {
            s = sign_of(a);
        } else {
            const double v = (1.0 - weight_) * a + weight_ * b;
            const double scale = std::max(std::abs(a), std::abs(b));
            s = std::abs(v) <= 1e-12 * scale ? Sign::zero : sign_of(v);
        }
        if (x_ < 0.0 && p.parity == Parity::odd) s = -s;
        ++n_;
        return s;
    }
    std::uint64_t index() const override { return n_; }
    void seek(std::uint64_t n) override { n_ = n; }
    bool random_access() const override { return true; }
    std::unique_ptr<SignSequence> clone() const override { return std::make_unique<EigenpairSignSequence>(*this); }
    std::string describe() const override
    {
        std::ostringstream os;
        os.precision(17);
        os << "eigenpairs[" << set_->potential.str() << "](x=" << x_ << ")";
        return os.str();
    }

private:
    std::shared_ptr<const EigenpairSet> set_;
    double x_;
    std::size_t cell_ = 0;
    double weight_ = 0.0;
    std::uint64_t n_ = 0;
};

} // namespace

std::unique_ptr<SignSequence> eigenpair_sign_sequence(std::shared_ptr<const EigenpairSet> set, double x)
{
    return std::make_unique<EigenpairSignSequence>(std::move(set), x);
}

std::unique_ptr<SignPairSource> eigenpair_sign_source(std::shared_ptr<const EigenpairSet> set, double x, double y)
{
    return std::make_unique<PointPairSource>(eigenpair_sign_sequence(set, x), eigenpair_sign_sequence(set, y));
}

} // namespace signcorr::schrodinger
