#include "signcorr/fixed_point.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>

namespace signcorr {

namespace {

using boost::multiprecision::cpp_int;

const cpp_int& two_pow_128()
{
    static const cpp_int v = cpp_int(1) << 128;
    return v;
}

FixedPointFraction from_big(cpp_int v)
{
    const cpp_int& m = two_pow_128();
    v %= m;
    if (v < 0) v += m;
    auto hi = static_cast<std::uint64_t>(v >> 64);
    auto lo = static_cast<std::uint64_t>(v & cpp_int(~std::uint64_t(0)));
    return FixedPointFraction::from_raw((static_cast<FixedPointFraction::raw_type>(hi) << 64) | lo);
}

} // namespace

FixedPointFraction FixedPointFraction::from_double(double v)
{
    if (!std::isfinite(v)) throw std::invalid_argument("FixedPointFraction: non-finite input");
    double r = v - std::floor(v);
    if (r >= 1.0) r = 0.0;
    // r has at most 53 significant bits, so both halves below are exact.
    long double scaled = std::ldexp(static_cast<long double>(r), 64);
    long double hi = std::floor(scaled);
    long double lo = std::ldexp(scaled - hi, 64);
    auto h = static_cast<std::uint64_t>(hi);
    auto l = static_cast<std::uint64_t>(lo);
    return from_raw((static_cast<raw_type>(h) << 64) | l);
}

FixedPointFraction FixedPointFraction::from_rational(const Rational& r)
{
    Rational f = r.frac();
    // round(num * 2^128 / den)
    cpp_int scaled = (cpp_int(f.num()) << 128) * 2 + cpp_int(f.den());
    scaled /= cpp_int(f.den()) * 2;
    return from_big(scaled);
}

FixedPointFraction FixedPointFraction::from_decimal(std::string_view text)
{
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    auto dot = text.find('.');
    std::string_view frac_digits = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    std::string_view int_digits = text.substr(0, dot);
    if (int_digits.empty() && frac_digits.empty()) throw std::invalid_argument("empty decimal literal");
    for (char c : int_digits)
        if (c < '0' || c > '9') throw std::invalid_argument("bad decimal literal: " + std::string(text));
    cpp_int digits = 0;
    cpp_int scale = 1;
    for (char c : frac_digits) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad decimal literal: " + std::string(text));
        digits = digits * 10 + (c - '0');
        scale *= 10;
    }
    // Integer part vanishes mod 1.
    cpp_int scaled = ((digits << 128) * 2 + scale) / (scale * 2);
    if (negative) scaled = -scaled;
    return from_big(scaled);
}

FixedPointFraction FixedPointFraction::from_quadratic_surd(std::int64_t a, std::int64_t b, std::int64_t c,
                                                           std::int64_t d)
{
    if (c < 0) throw std::invalid_argument("from_quadratic_surd: negative radicand");
    if (d == 0) throw std::invalid_argument("from_quadratic_surd: zero denominator");
    // floor(|b| sqrt(c) 2^128) = isqrt(b^2 c 2^256)
    cpp_int radicand = cpp_int(b) * cpp_int(b) * cpp_int(c);
    const cpp_int shifted = radicand << 256;
    cpp_int root = boost::multiprecision::sqrt(shifted);
    cpp_int numerator = (cpp_int(a) << 128) + (b < 0 ? -root : root);
    cpp_int den = d;
    if (den < 0) {
        den = -den;
        numerator = -numerator;
    }
    cpp_int q = numerator / den;
    if (numerator < 0 && q * den != numerator) q -= 1;
    return from_big(q);
}

double FixedPointFraction::to_double() const
{
    return static_cast<double>(to_long_double());
}

long double FixedPointFraction::to_long_double() const
{
    auto hi = static_cast<std::uint64_t>(raw_ >> 64);
    auto lo = static_cast<std::uint64_t>(raw_);
    return std::ldexp(static_cast<long double>(hi), -64) + std::ldexp(static_cast<long double>(lo), -128);
}

std::string FixedPointFraction::hex() const
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(32, '0');
    raw_type v = raw_;
    for (int i = 31; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[static_cast<unsigned>(v & 0xF)];
        v >>= 4;
    }
    return out;
}

} // namespace signcorr
