#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace signcorr {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always kept in lowest terms with a positive denominator. Intermediate
/// products are formed in 128 bits; a result that does not fit back into
/// 64 bits throws std::overflow_error rather than wrapping.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    long double to_long_double() const
    {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    /// Largest integer not exceeding the value.
    std::int64_t floor() const;
    /// Value minus floor(), in [0, 1).
    Rational frac() const;
    Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(-num_, den_); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    static Rational from_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::int64_t gcd64(std::int64_t a, std::int64_t b);

/// Floor-mod with a representative in [0, m) for m > 0.
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// Parses "p/q" or a bare integer "p". Decimal points are rejected.
Rational parse_fraction(std::string_view text);

/// Parses a decimal literal such as "0.3", "-1.25" or "15" exactly.
/// Also accepts the "p/q" form. Exponent notation is rejected.
Rational parse_exact_decimal(std::string_view text);

} // namespace signcorr
