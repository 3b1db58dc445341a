#pragma once

#include <cmath>
#include <cstdint>

#include "signcorr/rational.hpp"

namespace signcorr {

enum class Sign : std::int8_t { negative = -1, zero = 0, positive = 1 };

constexpr int to_int(Sign s) { return static_cast<int>(s); }

constexpr Sign operator*(Sign a, Sign b)
{
    return static_cast<Sign>(to_int(a) * to_int(b));
}

constexpr Sign operator-(Sign s) { return static_cast<Sign>(-to_int(s)); }

template <typename T>
constexpr Sign sign_of(T v)
{
    return v > T(0) ? Sign::positive : (v < T(0) ? Sign::negative : Sign::zero);
}

constexpr char sign_char(Sign s)
{
    return s == Sign::positive ? '+' : (s == Sign::negative ? '-' : '0');
}

/// Sign of cos(2*pi*u). The factor counts as zero when u lies within
/// `tolerance` (absolute, after reduction mod 1) of a quarter-integer
/// 1/4 or 3/4.
inline Sign cos_sign(double u, double tolerance)
{
    double r = u - std::floor(u);
    if (std::abs(r - 0.25) <= tolerance || std::abs(r - 0.75) <= tolerance) return Sign::zero;
    return (r < 0.25 || r > 0.75) ? Sign::positive : Sign::negative;
}

/// Exact sign of cos(2*pi*u) for rational u.
inline Sign cos_sign(const Rational& u)
{
    Rational r = u.frac();
    Rational quarter(1, 4), three_quarters(3, 4);
    if (r == quarter || r == three_quarters) return Sign::zero;
    return (r < quarter || r > three_quarters) ? Sign::positive : Sign::negative;
}

} // namespace signcorr
