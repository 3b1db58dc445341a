#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "signcorr/rational.hpp"
#include "signcorr/sign.hpp"

namespace signcorr {

/// A number in [0, 1) stored as an unsigned 128-bit binary fraction.
///
/// Addition and integer multiplication wrap modulo 2^128, which is exactly
/// reduction modulo 1, so frac(n * alpha) accumulates with no drift beyond
/// the single rounding of alpha itself (at most 2^-128).
class FixedPointFraction {
public:
    using raw_type = unsigned __int128;
    static constexpr int kFractionBits = 128;

    constexpr FixedPointFraction() = default;
    static constexpr FixedPointFraction from_raw(raw_type raw)
    {
        FixedPointFraction f;
        f.raw_ = raw;
        return f;
    }

    /// frac(v), converted exactly (doubles carry at most 53 bits).
    static FixedPointFraction from_double(double v);
    /// frac(r), rounded to the nearest representable value.
    static FixedPointFraction from_rational(const Rational& r);
    /// frac of a decimal literal with arbitrarily many digits, e.g.
    /// "0.1545084971874737..." or "-2.5".
    static FixedPointFraction from_decimal(std::string_view text);
    /// frac((a + b * sqrt(c)) / d) for c >= 0, d != 0, accurate to 2^-127.
    static FixedPointFraction from_quadratic_surd(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

    constexpr raw_type raw() const { return raw_; }
    double to_double() const;
    long double to_long_double() const;
    /// Hex digits of the raw value, most significant first.
    std::string hex() const;

    constexpr FixedPointFraction operator+(FixedPointFraction o) const { return from_raw(raw_ + o.raw_); }
    constexpr FixedPointFraction operator-(FixedPointFraction o) const { return from_raw(raw_ - o.raw_); }
    constexpr FixedPointFraction& operator+=(FixedPointFraction o)
    {
        raw_ += o.raw_;
        return *this;
    }
    /// frac(k * value) for a signed integer k.
    constexpr FixedPointFraction times(std::int64_t k) const
    {
        raw_type m = k < 0 ? raw_type(0) - raw_type(-static_cast<__int128>(k)) : raw_type(k);
        return from_raw(raw_ * m);
    }

    /// Exact sign of cos(2 pi value): zero only at exactly 1/4 or 3/4.
    constexpr Sign cos_sign() const
    {
        constexpr raw_type quarter = raw_type(1) << 126;
        constexpr raw_type three_quarters = quarter * 3;
        if (raw_ == quarter || raw_ == three_quarters) return Sign::zero;
        return (raw_ < quarter || raw_ > three_quarters) ? Sign::positive : Sign::negative;
    }

    friend constexpr bool operator==(FixedPointFraction, FixedPointFraction) = default;
    friend constexpr auto operator<=>(FixedPointFraction a, FixedPointFraction b) { return a.raw_ <=> b.raw_; }

private:
    raw_type raw_ = 0;
};

} // namespace signcorr
