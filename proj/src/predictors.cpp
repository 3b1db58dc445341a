#include "signcorr/predictors.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "signcorr/torus.hpp"

namespace signcorr::predict {

namespace {

bool is_odd(std::int64_t v) { return mod_floor(v, 2) == 1; }

double minus_one_pow(std::int64_t e) { return mod_floor(e, 2) == 0 ? 1.0 : -1.0; }

} // namespace

RationalRatio::RationalRatio(std::int64_t p, std::int64_t q)
{
    if (p == 0 || q == 0) throw std::invalid_argument("ratio components must be nonzero");
    std::int64_t g = gcd64(p, q);
    p_ = p / g;
    q_ = q / g;
}

Theorem1Result theorem1_limit(const RationalRatio& ratio, double theta)
{
    Theorem1Result out;
    // (pq + pq * avg) / (2pq) rounds once, so rational values such as 1/3
    // come out correctly rounded.
    const double pq = static_cast<double>(ratio.p()) * static_cast<double>(ratio.q());
    const double scaled = torus::ray_average_times_pq(torus::TorusRay::diagonal(ratio.p(), ratio.q(), theta));
    out.limit = (pq + scaled) / (2.0 * pq);
    out.below_bound_regime = std::abs(static_cast<__int128>(ratio.p()) * ratio.q()) < 3;
    return out;
}

double theorem2_limit(const RationalRatio& ratio)
{
    const std::int64_t pm = mod_floor(ratio.p(), 4);
    const std::int64_t qm = mod_floor(ratio.q(), 4);
    if ((pm == 1 && qm == 1) || (pm == 3 && qm == 3))
        return 0.5 + 1.0 / (2.0 * static_cast<double>(ratio.p()) * static_cast<double>(ratio.q()));
    return 0.5;
}

WkbFamily::WkbFamily(std::vector<PhaseClass> classes, std::string frequency_map, bool amplitude_positive)
    : classes_(std::move(classes)), frequency_map_(std::move(frequency_map)), amplitude_positive_(amplitude_positive)
{
    if (classes_.empty()) throw std::invalid_argument("WkbFamily: no phase classes");
    double total = 0.0;
    for (const auto& c : classes_) {
        if (!(c.weight > 0.0)) throw std::invalid_argument("WkbFamily: weights must be positive");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("WkbFamily: weights must sum to 1");
}

WkbFamily WkbFamily::single(double theta, std::string frequency_map)
{
    return WkbFamily({{theta, 1.0}}, std::move(frequency_map));
}

WkbFamily WkbFamily::even_potential(std::string frequency_map)
{
    return WkbFamily({{0.0, 0.5}, {0.25, 0.5}}, std::move(frequency_map));
}

double wkb_family_limit(const RationalRatio& ratio, const WkbFamily& family)
{
    if (!family.amplitude_positive())
        throw std::invalid_argument("wkb_family_limit: amplitudes must have a common sign at both points");
    double sum = 0.5;
    for (const auto& c : family.classes()) {
        auto ray = torus::TorusRay::diagonal(ratio.p(), ratio.q(), c.theta);
        sum += c.weight * 0.5 * torus::ray_average_closed_form(ray);
    }
    return sum;
}

double hermite_limit(std::int64_t m)
{
    if (m == 0) throw std::invalid_argument("hermite_limit: y / x must be nonzero");
    if (mod_floor(m, 4) == 1) return 0.5 + 1.0 / (2.0 * static_cast<double>(m));
    return 0.5;
}

double hermite_limit(const Rational& x, const Rational& y)
{
    if (x.num() == 0 || y.num() == 0) throw std::invalid_argument("hermite_limit: points must be nonzero");
    Rational m = y / x;
    if (!m.is_integer()) throw std::invalid_argument("hermite_limit: y / x = " + m.str() + " is not an integer");
    return hermite_limit(m.num());
}

double laguerre_limit(const RationalRatio& ratio, int d)
{
    if (d < 1) throw std::invalid_argument("laguerre_limit: dimension must be at least 1");
    const std::int64_t p = ratio.p();
    const std::int64_t q = ratio.q();
    if (!is_odd(p) || !is_odd(q)) return 0.5;
    // p - q is even, so (p - q)(d - 1)/2 is an integer.
    const std::int64_t half_shift = (p - q) * (d - 1) / 2;
    if (is_odd(half_shift)) return 0.5;
    const std::int64_t exponent = (p + q) / 2 + half_shift / 2;
    return 0.5 - minus_one_pow(exponent) / (2.0 * static_cast<double>(p) * static_cast<double>(q));
}

double laguerre_limit(const Rational& r1, const Rational& r2, int d)
{
    if (!(r1 > Rational(0)) || !(r2 > Rational(0))) throw std::invalid_argument("laguerre_limit: radii must be positive");
    return laguerre_limit(RationalRatio::from(r1 / r2), d);
}

} // namespace signcorr::predict
