#include "signcorr/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace signcorr::special {

namespace {

constexpr double kRescaleHigh = 1e150;
constexpr double kRescaleLow = 1e-150;

Sign classify(double cur, double prev)
{
    double scale = std::hypot(cur, prev);
    if (scale == 0.0 || std::abs(cur) <= kRecurrenceZeroTolerance * scale) return Sign::zero;
    return sign_of(cur);
}

// Keeps (prev, cur) within range; a common positive factor leaves signs alone.
void rescale(double& prev, double& cur)
{
    double m = std::max(std::abs(prev), std::abs(cur));
    if (m > kRescaleHigh) {
        prev *= kRescaleLow;
        cur *= kRescaleLow;
    } else if (m != 0.0 && m < kRescaleLow) {
        prev *= kRescaleHigh;
        cur *= kRescaleHigh;
    }
}

std::string format_double(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

// ---------------------------------------------------------------- Hermite

HermitePoint::HermitePoint(double x) : x_(x), t_(std::sqrt(2.0 * std::numbers::pi) * x)
{
    if (!std::isfinite(t_)) throw std::invalid_argument("HermitePoint: non-finite point");
}

std::vector<double> hermite_functions(double t, std::size_t count)
{
    std::vector<double> out;
    out.reserve(count);
    if (count == 0) return out;
    double prev = 0.0;
    double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * t * t);
    for (std::size_t n = 0; n < count; ++n) {
        out.push_back(cur);
        auto nd = static_cast<double>(n);
        double next = std::sqrt(2.0 / (nd + 1.0)) * t * cur - std::sqrt(nd / (nd + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return out;
}

double hermite_eigenfunction(std::size_t n, double x)
{
    const double t = std::sqrt(2.0 * std::numbers::pi) * x;
    return std::pow(2.0 * std::numbers::pi, 0.25) * hermite_functions(t, n + 1).back();
}

HermiteSignSequence::HermiteSignSequence(HermitePoint point) : point_(point) { reset(); }

void HermiteSignSequence::reset()
{
    n_ = 0;
    prev_ = 0.0;
    cur_ = 1.0;
}

Sign HermiteSignSequence::next()
{
    Sign s = classify(cur_, prev_);
    auto nd = static_cast<double>(n_);
    double next = std::sqrt(2.0 / (nd + 1.0)) * point_.t() * cur_ - std::sqrt(nd / (nd + 1.0)) * prev_;
    prev_ = cur_;
    cur_ = next;
    rescale(prev_, cur_);
    ++n_;
    return s;
}

void HermiteSignSequence::seek(std::uint64_t n)
{
    if (n < n_) reset();
    while (n_ < n) next();
}

std::string HermiteSignSequence::describe() const
{
    return "hermite(x=" + format_double(point_.x()) + ")";
}

SignSequenceResult hermite_sign_sequence(const HermitePoint& point, std::uint64_t count)
{
    if (count == 0) throw std::invalid_argument("hermite_sign_sequence: N must be at least 1");
    HermiteSignSequence seq(point);
    return collect(seq, count);
}

// ---------------------------------------------------------------- Laguerre

LaguerreParams::LaguerreParams(double nu, double r, double z) : nu_(nu), r_(r), z_(z)
{
    if (!(nu > -1.0)) throw std::invalid_argument("Laguerre parameter nu must exceed -1");
    if (!(z > 0.0) || !std::isfinite(z)) throw std::invalid_argument("Laguerre argument must be positive");
}

LaguerreParams LaguerreParams::from_dimension(int d, double r)
{
    if (d < 1) throw std::invalid_argument("Laguerre dimension must be at least 1");
    return from_radius(0.5 * d - 1.0, r);
}

LaguerreParams LaguerreParams::from_radius(double nu, double r)
{
    if (!(r > 0.0)) throw std::invalid_argument("Laguerre radius must be positive");
    return LaguerreParams(nu, r, 2.0 * std::numbers::pi * r * r);
}

LaguerreParams LaguerreParams::from_argument(double nu, double z)
{
    return LaguerreParams(nu, std::sqrt(z / (2.0 * std::numbers::pi)), z);
}

std::vector<double> laguerre_polynomials(double nu, double z, std::size_t count)
{
    std::vector<double> out;
    out.reserve(count);
    double prev = 0.0;
    double cur = 1.0;
    for (std::size_t n = 0; n < count; ++n) {
        out.push_back(cur);
        auto nd = static_cast<double>(n);
        double next = ((2.0 * nd + 1.0 + nu - z) * cur - (nd + nu) * prev) / (nd + 1.0);
        prev = cur;
        cur = next;
    }
    return out;
}

LaguerreSignSequence::LaguerreSignSequence(LaguerreParams params) : params_(params) { reset(); }

void LaguerreSignSequence::reset()
{
    n_ = 0;
    prev_ = 0.0;
    cur_ = 1.0;
}

Sign LaguerreSignSequence::next()
{
    Sign s = classify(cur_, prev_);
    auto nd = static_cast<double>(n_);
    const double nu = params_.nu();
    double next = ((2.0 * nd + 1.0 + nu - params_.z()) * cur_ - (nd + nu) * prev_) / (nd + 1.0);
    prev_ = cur_;
    cur_ = next;
    rescale(prev_, cur_);
    ++n_;
    return s;
}

void LaguerreSignSequence::seek(std::uint64_t n)
{
    if (n < n_) reset();
    while (n_ < n) next();
}

std::string LaguerreSignSequence::describe() const
{
    return "laguerre(nu=" + format_double(params_.nu()) + ", r=" + format_double(params_.r()) + ")";
}

SignSequenceResult laguerre_sign_sequence(const LaguerreParams& params, std::uint64_t count)
{
    if (count == 0) throw std::invalid_argument("laguerre_sign_sequence: N must be at least 1");
    LaguerreSignSequence seq(params);
    return collect(seq, count);
}

// ---------------------------------------------------------------- Chebyshev

AngleFraction::AngleFraction(Rational a) : value_(a)
{
    if (!(a > Rational(0) && a < Rational(1, 2)))
        throw std::invalid_argument("Chebyshev angle fraction " + a.str() + " outside (0, 1/2)");
}

AngleFraction::AngleFraction(FixedPointFraction a) : value_(a)
{
    constexpr auto half = FixedPointFraction::from_raw(FixedPointFraction::raw_type(1) << 127);
    if (a.raw() == 0 || !(a < half))
        throw std::invalid_argument("Chebyshev angle fraction " + std::to_string(a.to_double()) + " outside (0, 1/2)");
}

double AngleFraction::to_double() const
{
    return is_rational() ? rational().to_double() : fixed().to_double();
}

std::string AngleFraction::str() const
{
    if (is_rational()) return rational().str();
    std::ostringstream os;
    os.precision(19);
    os << fixed().to_long_double();
    return os.str();
}

AngleFraction AngleFraction::scaled(std::int64_t k) const
{
    if (is_rational()) return AngleFraction(rational() * Rational(k));
    return AngleFraction(fixed().times(k));
}

ChebyshevSignSequence::ChebyshevSignSequence(AngleFraction a) : angle_(std::move(a)) {}

Sign ChebyshevSignSequence::next()
{
    Sign s;
    if (angle_.is_rational()) {
        const std::int64_t den = angle_.rational().den();
        // cos(2 pi r / den) vanishes iff 4r = den or 4r = 3 den.
        const __int128 four_r = static_cast<__int128>(residue_) * 4;
        if (four_r == den || four_r == static_cast<__int128>(den) * 3)
            s = Sign::zero;
        else
            s = (four_r < den || four_r > static_cast<__int128>(den) * 3) ? Sign::positive : Sign::negative;
        residue_ += angle_.rational().num();
        if (residue_ >= den) residue_ -= den;
    } else {
        s = phase_.cos_sign();
        phase_ += angle_.fixed();
    }
    ++n_;
    return s;
}

void ChebyshevSignSequence::seek(std::uint64_t n)
{
    n_ = n;
    if (angle_.is_rational()) {
        const std::int64_t den = angle_.rational().den();
        const auto wide = static_cast<__int128>(n % static_cast<std::uint64_t>(den)) * angle_.rational().num();
        residue_ = static_cast<std::int64_t>(wide % den);
    } else {
        phase_ = FixedPointFraction::from_raw(angle_.fixed().raw() * static_cast<FixedPointFraction::raw_type>(n));
    }
}

std::string ChebyshevSignSequence::describe() const
{
    return "chebyshev(a=" + angle_.str() + ")";
}

SignSequenceResult chebyshev_sign_sequence(const AngleFraction& a, std::uint64_t count)
{
    if (count == 0) throw std::invalid_argument("chebyshev_sign_sequence: N must be at least 1");
    ChebyshevSignSequence seq(a);
    return collect(seq, count);
}

} // namespace signcorr::special
