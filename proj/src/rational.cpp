#include "signcorr/rational.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace signcorr {

namespace {

__int128 gcd128(__int128 a, __int128 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(__int128 v)
{
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view s, std::string_view whole)
{
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("not an integer fraction: '" + std::string(whole) + "'");
    return v;
}

} // namespace

std::int64_t gcd64(std::int64_t a, std::int64_t b)
{
    return static_cast<std::int64_t>(gcd128(a, b));
}

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den)
{
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (!fits64(num) || !fits64(den)) throw std::overflow_error("Rational: 64-bit overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

std::int64_t Rational::floor() const
{
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

Rational Rational::frac() const
{
    return Rational(mod_floor(num_, den_), den_);
}

std::string Rational::str() const
{
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b)
{
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                               static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b)
{
    return a + (-b);
}

Rational operator*(const Rational& a, const Rational& b)
{
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b)
{
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational parse_fraction(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, text));
    std::int64_t p = parse_int(text.substr(0, slash), text);
    std::int64_t q = parse_int(text.substr(slash + 1), text);
    if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
}

Rational parse_exact_decimal(std::string_view text)
{
    if (text.find('/') != std::string_view::npos) return parse_fraction(text);
    auto dot = text.find('.');
    if (dot == std::string_view::npos) return Rational(parse_int(text, text));

    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    bool negative = false;
    if (!ip.empty() && (ip.front() == '-' || ip.front() == '+')) {
        negative = ip.front() == '-';
        ip.remove_prefix(1);
    }
    if ((ip.empty() && fp.empty()) || fp.size() > 18)
        throw std::invalid_argument("unsupported decimal literal: '" + std::string(text) + "'");
    for (char c : fp)
        if (c < '0' || c > '9') throw std::invalid_argument("not a decimal literal: '" + std::string(text) + "'");

    std::int64_t whole = ip.empty() ? 0 : parse_int(ip, text);
    if (whole < 0) throw std::invalid_argument("not a decimal literal: '" + std::string(text) + "'");
    std::int64_t scale = 1;
    std::int64_t digits = 0;
    for (char c : fp) {
        scale *= 10;
        digits = digits * 10 + (c - '0');
    }
    Rational r = Rational(whole) + Rational(digits, scale);
    return negative ? -r : r;
}

} // namespace signcorr
