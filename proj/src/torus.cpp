#include "signcorr/torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace signcorr::torus {

namespace {

double wrap_phase(double v)
{
    double r = v - std::floor(v);
    return r >= 1.0 ? 0.0 : r;
}

void require_direction(std::int64_t a, std::int64_t b)
{
    if (a == 0 || b == 0) throw std::invalid_argument("torus ray: direction components must be nonzero");
}

// Parameters t in (0, 1) at which cos(2 pi (c t - phase)) vanishes, i.e.
// c t - phase = 1/4 + k/2.
void append_crossings(std::int64_t c, double phase, std::vector<double>& out)
{
    double lo = std::min(-phase, static_cast<double>(c) - phase);
    double hi = std::max(-phase, static_cast<double>(c) - phase);
    auto kmin = static_cast<std::int64_t>(std::ceil(2.0 * lo - 0.5));
    auto kmax = static_cast<std::int64_t>(std::floor(2.0 * hi - 0.5));
    for (std::int64_t k = kmin; k <= kmax; ++k) {
        double t = (phase + 0.25 + 0.5 * static_cast<double>(k)) / static_cast<double>(c);
        if (t > 0.0 && t < 1.0) out.push_back(t);
    }
}

void append_crossings(std::int64_t c, const Rational& phase, std::vector<Rational>& out)
{
    // c t - phase ranges over [min(-phase, c - phase), max(...)] for t in [0, 1].
    Rational lo = std::min(-phase, Rational(c) - phase);
    Rational hi = std::max(-phase, Rational(c) - phase);
    // k/2 + 1/4 in [lo, hi]  <=>  k in [2 lo - 1/2, 2 hi - 1/2]
    Rational klo = Rational(2) * lo - Rational(1, 2);
    Rational khi = Rational(2) * hi - Rational(1, 2);
    std::int64_t kmin = klo.is_integer() ? klo.num() : klo.floor() + 1;
    std::int64_t kmax = khi.floor();
    for (std::int64_t k = kmin; k <= kmax; ++k) {
        Rational t = (phase + Rational(1, 4) + Rational(k, 2)) / Rational(c);
        if (t > Rational(0) && t < Rational(1)) out.push_back(t);
    }
}

} // namespace

Sign phi(double x, double y)
{
    return cos_sign(x, kZeroTolerance) * cos_sign(y, kZeroTolerance);
}

TorusRay::TorusRay(std::int64_t a, std::int64_t b, double alpha, double beta)
{
    require_direction(a, b);
    std::int64_t g = gcd64(a, b);
    p_ = a / g;
    q_ = b / g;
    alpha_ = wrap_phase(alpha);
    beta_ = wrap_phase(beta);
}

ExactTorusRay::ExactTorusRay(std::int64_t a, std::int64_t b, Rational alpha, Rational beta)
    : alpha_(alpha.frac()), beta_(beta.frac())
{
    require_direction(a, b);
    std::int64_t g = gcd64(a, b);
    p_ = a / g;
    q_ = b / g;
}

double odd_cosine_series(double u)
{
    double reduced = std::remainder(u, 1.0);
    return std::numbers::pi * std::numbers::pi / 8.0 * (1.0 - 4.0 * std::abs(reduced));
}

double ray_average_times_pq(const TorusRay& ray)
{
    const std::int64_t p = ray.p();
    const std::int64_t q = ray.q();
    if (p % 2 == 0 || q % 2 == 0) return 0.0;

    // (-1)^((p+q)/2 + 1) * 8 / (pi^2 p q) * S(p beta - q alpha); the pi^2/8
    // of the triangle wave cancels against the prefactor.
    const std::int64_t exponent = (p + q) / 2 + 1;
    const double sign = mod_floor(exponent, 2) == 0 ? 1.0 : -1.0;
    const double shift = static_cast<double>(p) * ray.beta() - static_cast<double>(q) * ray.alpha();
    return sign * (1.0 - 4.0 * std::abs(std::remainder(shift, 1.0)));
}

double ray_average_closed_form(const TorusRay& ray)
{
    return ray_average_times_pq(ray) / (static_cast<double>(ray.p()) * static_cast<double>(ray.q()));
}

double ray_average_breakpoints(const TorusRay& ray)
{
    std::vector<double> ts{0.0, 1.0};
    append_crossings(ray.p(), ray.alpha(), ts);
    append_crossings(ray.q(), ray.beta(), ts);
    std::sort(ts.begin(), ts.end());

    std::vector<double> cuts;
    cuts.reserve(ts.size());
    for (double t : ts)
        if (cuts.empty() || t - cuts.back() > 1e-14) cuts.push_back(t);
    cuts.back() = 1.0;

    const auto p = static_cast<double>(ray.p());
    const auto q = static_cast<double>(ray.q());
    long double total = 0.0L;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        Sign s = cos_sign(p * mid - ray.alpha(), 0.0) * cos_sign(q * mid - ray.beta(), 0.0);
        total += static_cast<long double>(to_int(s)) * (cuts[i + 1] - cuts[i]);
    }
    return static_cast<double>(total);
}

Rational ray_average_breakpoints(const ExactTorusRay& ray)
{
    std::vector<Rational> ts{Rational(0), Rational(1)};
    append_crossings(ray.p(), ray.alpha(), ts);
    append_crossings(ray.q(), ray.beta(), ts);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    Rational total(0);
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        Rational mid = (ts[i] + ts[i + 1]) * Rational(1, 2);
        Sign s = cos_sign(Rational(ray.p()) * mid - ray.alpha()) * cos_sign(Rational(ray.q()) * mid - ray.beta());
        if (s != Sign::zero) total += Rational(to_int(s)) * (ts[i + 1] - ts[i]);
    }
    return total;
}

LineAverage ray_average_monte_carlo(const IrrationalRay& ray, double horizon)
{
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("ray_average_monte_carlo: horizon must be positive");

    const double a = ray.a;
    const double b = ray.b;
    const double inf = std::numeric_limits<double>::infinity();

    // First coordinate s = t vanishes at t = 1/4 + k/2, k >= 0.
    std::int64_t k1 = 0;
    auto crossing1 = [&] { return 0.25 + 0.5 * static_cast<double>(k1); };

    // Second coordinate s = a t + b vanishes at t = (1/4 + k/2 - b) / a.
    std::int64_t k2 = 0;
    std::int64_t step2 = 0;
    if (a > 0.0) {
        k2 = static_cast<std::int64_t>(std::floor(2.0 * b - 0.5)) + 1;
        step2 = 1;
    } else if (a < 0.0) {
        k2 = static_cast<std::int64_t>(std::ceil(2.0 * b - 0.5)) - 1;
        step2 = -1;
    }
    auto crossing2 = [&] { return step2 == 0 ? inf : (0.25 + 0.5 * static_cast<double>(k2) - b) / a; };
    // Guard against rounding placing the first crossing at t <= 0.
    while (step2 != 0 && crossing2() <= 0.0) k2 += step2;

    const double first = std::min({crossing1(), crossing2(), horizon});
    const double probe = 0.5 * first;
    Sign current = cos_sign(probe, 0.0) * cos_sign(a * probe + b, 0.0);

    LineAverage out;
    const double half = 0.5 * horizon;
    bool half_recorded = false;
    long double integral = 0.0L;
    double t_prev = 0.0;

    auto advance_to = [&](double t) {
        if (!half_recorded && t >= half) {
            long double at_half = integral + static_cast<long double>(to_int(current)) * (half - t_prev);
            out.half_horizon_value = static_cast<double>(at_half / half);
            half_recorded = true;
        }
        integral += static_cast<long double>(to_int(current)) * (t - t_prev);
        t_prev = t;
    };

    for (;;) {
        double c1 = crossing1();
        double c2 = crossing2();
        double next = std::min(c1, c2);
        if (next >= horizon) break;
        advance_to(next);
        if (c1 == next) {
            current = -current;
            ++k1;
            ++out.breakpoints;
        }
        if (c2 == next) {
            current = -current;
            k2 += step2;
            ++out.breakpoints;
        }
    }
    advance_to(horizon);

    out.value = static_cast<double>(integral / horizon);
    const double decay_floor = 1.0 / std::sqrt(horizon);
    out.non_decaying =
        std::abs(out.value) > decay_floor && std::abs(out.value) >= 0.75 * std::abs(out.half_horizon_value);
    return out;
}

SignPattern make_sign_pattern(int first, int second)
{
    if ((first != 1 && first != -1) || (second != 1 && second != -1))
        throw std::invalid_argument("sign pattern entries must be +1 or -1");
    return first == second ? SignPattern::agree : SignPattern::opposite;
}

double sign_pattern_integral(const TorusRay& ray, SignPattern pattern)
{
    double avg = ray_average_closed_form(ray);
    return pattern == SignPattern::agree ? 0.5 * (1.0 + avg) : 0.5 * (1.0 - avg);
}

} // namespace signcorr::torus
