#include "signcorr/equidistribution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace signcorr::equidist {

double star_discrepancy(std::span<const double> points)
{
    if (points.empty()) throw std::invalid_argument("star_discrepancy: empty point set");
    std::vector<double> sorted(points.begin(), points.end());
    for (double v : sorted)
        if (!(v >= 0.0 && v < 1.0)) throw std::invalid_argument("star_discrepancy: point outside [0, 1)");
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto rank = static_cast<double>(i + 1);
        d = std::max({d, rank / n - sorted[i], sorted[i] - (rank - 1.0) / n});
    }
    return d;
}

double weyl_sum(std::span<const double> points, std::int64_t k)
{
    if (k == 0) throw std::invalid_argument("weyl_sum: k must be nonzero");
    if (points.empty()) throw std::invalid_argument("weyl_sum: empty point set");
    long double re = 0.0L;
    long double im = 0.0L;
    const double kk = static_cast<double>(k);
    for (double x : points) {
        // Reduce k x mod 1 first so large k keeps full angular accuracy.
        double arg = kk * x;
        arg -= std::floor(arg);
        const double angle = 2.0 * std::numbers::pi * arg;
        re += std::cos(angle);
        im += std::sin(angle);
    }
    return static_cast<double>(std::hypot(re, im) / static_cast<long double>(points.size()));
}

std::vector<double> frac_sequence(FixedPointFraction alpha, std::uint64_t count)
{
    std::vector<double> out;
    out.reserve(count);
    FracSequence seq(alpha);
    for (std::uint64_t i = 0; i < count; ++i) {
        double v = seq.next().to_double();
        // Rounding to double can produce 1.0 from values just below 1.
        out.push_back(v >= 1.0 ? std::nextafter(1.0, 0.0) : v);
    }
    return out;
}

std::vector<double> frac_sequence(double alpha, std::uint64_t count)
{
    return frac_sequence(FixedPointFraction::from_double(alpha), count);
}

ParityLambdas split_by_parity(std::span<const double> lambdas)
{
    ParityLambdas out;
    for (std::size_t n = 0; n < lambdas.size(); ++n) (n % 2 == 0 ? out.even : out.odd).push_back(lambdas[n]);
    return out;
}

namespace {

ParityClassReport class_report(const std::vector<double>& lambdas, double x, int parity)
{
    ParityClassReport out;
    out.parity = parity;
    if (lambdas.empty()) return out;

    std::vector<double> fracs;
    fracs.reserve(lambdas.size());
    for (double lambda : lambdas) {
        if (!(lambda >= 0.0)) throw std::invalid_argument("h2_report: negative eigenvalue");
        double v = std::sqrt(lambda) * x;
        v -= std::floor(v);
        fracs.push_back(v >= 1.0 ? 0.0 : v);
    }

    std::vector<std::uint64_t> sizes;
    for (std::uint64_t n = 1; n < fracs.size(); n *= 2) sizes.push_back(n);
    sizes.push_back(fracs.size());
    for (std::uint64_t n : sizes) {
        std::span<const double> head(fracs.data(), n);
        out.checkpoints.push_back({n, star_discrepancy(head), weyl_sum(head, 1)});
    }
    out.equidistribution_failure = out.checkpoints.back().star_discrepancy > kEquidistributionFailureThreshold;
    return out;
}

} // namespace

H2Report h2_report(const ParityLambdas& lambdas, double x)
{
    if (x == 0.0 || !std::isfinite(x)) throw std::invalid_argument("h2_report: x must be a nonzero real");
    H2Report out;
    out.x = x;
    out.even = class_report(lambdas.even, x, 0);
    out.odd = class_report(lambdas.odd, x, 1);
    return out;
}

} // namespace signcorr::equidist
