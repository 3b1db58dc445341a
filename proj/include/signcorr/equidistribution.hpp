#pragma once

// Equidistribution diagnostics: star discrepancy, Weyl sums and a drift-free
// stream of fractional parts frac(n alpha).

#include <cstdint>
#include <span>
#include <vector>

#include "signcorr/fixed_point.hpp"

namespace signcorr::equidist {

/// D*_N = max_i max(i/N - x_(i), x_(i) - (i-1)/N) over the sorted points.
/// Throws std::invalid_argument on empty input or points outside [0, 1).
double star_discrepancy(std::span<const double> points);

/// (1/N) |sum_n exp(2 pi i k x_n)|. Throws for k = 0 or empty input.
double weyl_sum(std::span<const double> points, std::int64_t k);

/// Streams frac(n alpha), n = 0, 1, ... by fixed-point addition.
class FracSequence {
public:
    explicit FracSequence(FixedPointFraction alpha) : alpha_(alpha) {}
    explicit FracSequence(double alpha) : alpha_(FixedPointFraction::from_double(alpha)) {}

    FixedPointFraction next()
    {
        FixedPointFraction v = current_;
        current_ += alpha_;
        ++n_;
        return v;
    }
    std::uint64_t index() const { return n_; }
    /// Direct positioning: frac(n alpha) is one wrapping multiply.
    void seek(std::uint64_t n)
    {
        n_ = n;
        current_ = FixedPointFraction::from_raw(alpha_.raw() * static_cast<FixedPointFraction::raw_type>(n));
    }
    FixedPointFraction alpha() const { return alpha_; }

private:
    FixedPointFraction alpha_;
    FixedPointFraction current_{};
    std::uint64_t n_ = 0;
};

/// First `count` values of frac(n alpha) as doubles.
std::vector<double> frac_sequence(FixedPointFraction alpha, std::uint64_t count);
std::vector<double> frac_sequence(double alpha, std::uint64_t count);

/// A class whose final star discrepancy exceeds this is flagged as not
/// equidistributed.
inline constexpr double kEquidistributionFailureThreshold = 0.25;

struct DiscrepancyCheckpoint {
    std::uint64_t n = 0;
    double star_discrepancy = 0.0;
    double weyl_k1 = 0.0;
};

struct ParityClassReport {
    int parity = 0; ///< 0 for lambda_{2m}, 1 for lambda_{2m+1}
    std::vector<DiscrepancyCheckpoint> checkpoints;
    bool equidistribution_failure = false;
};

/// Eigenvalues split by parity of their global index.
struct ParityLambdas {
    std::vector<double> even;
    std::vector<double> odd;
};

ParityLambdas split_by_parity(std::span<const double> lambdas);

struct H2Report {
    double x = 0.0;
    ParityClassReport even;
    ParityClassReport odd;
};

/// Star discrepancy and first Weyl sum of {sqrt(lambda) x} per parity class,
/// at N = 1, 2, 4, ... and the full class size. Throws for x = 0.
H2Report h2_report(const ParityLambdas& lambdas, double x);

} // namespace signcorr::equidist
