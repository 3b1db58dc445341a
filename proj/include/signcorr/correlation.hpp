#pragma once

// Empirical sign-correlation counting over any SignPairSource.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "signcorr/rational.hpp"
#include "signcorr/sign_sequence.hpp"
#include "signcorr/special_functions.hpp"

namespace signcorr::lab {

struct Checkpoint {
    std::uint64_t n = 0;
    std::uint64_t agree = 0;
    double estimate = 0.0;
    std::optional<double> remainder; ///< agree - target * n, when a target is set
};

/// Counts over indices 0..n-1. agree + disagree + zero_hits == n; an index
/// is a zero-hit when either sign is zero and then counts towards neither.
struct CorrelationReport {
    std::string source;
    std::uint64_t n = 0;
    std::uint64_t agree = 0;
    std::uint64_t disagree = 0;
    std::uint64_t zero_hits = 0;
    double estimate = 0.0;
    std::vector<Checkpoint> checkpoints;
    std::optional<double> target;
    /// max over 1 <= N <= n of |agree(N) - target * N|
    std::optional<double> max_abs_remainder;
    std::uint64_t argmax_remainder_n = 0;
};

/// Powers of two below n, then n itself.
std::vector<std::uint64_t> default_checkpoints(std::uint64_t n);

struct EstimateOptions {
    unsigned threads = 0;
    /// Empty selects default_checkpoints(n). Entries above n are dropped.
    std::vector<std::uint64_t> checkpoints;
    std::optional<double> target;
};

/// Splits [0, n) into contiguous blocks, one per worker, and sums integer
/// counters; the result does not depend on the thread count. Sources that
/// are not random access are positioned by replay. Throws
/// std::invalid_argument for n = 0 or a target outside [0, 1]; source
/// failures propagate as SourceError carrying the failing index.
CorrelationReport estimate_limit(const SignPairSource& source, std::uint64_t n, const EstimateOptions& options = {});

struct RemainderPoint {
    std::uint64_t n = 0;
    std::uint64_t agree = 0;
    double estimate = 0.0;
    double remainder = 0.0;
};

struct RemainderScan {
    double target = 0.0;
    std::uint64_t n_max = 0;
    std::uint64_t agree = 0;
    std::uint64_t zero_hits = 0;
    /// Every stride-th N plus N = n_max.
    std::vector<RemainderPoint> series;
    double max_abs_remainder = 0.0;
    std::uint64_t argmax_n = 0;
};

RemainderScan remainder_scan(const SignPairSource& source, std::uint64_t n_max, double target,
                             std::uint64_t stride = 1, unsigned threads = 0);

/// CSV with header `n,agree,estimate,remainder`, LF line endings. Without a
/// target the remainder column is left empty.
std::string remainder_csv(const std::vector<RemainderPoint>& series, bool with_remainder = true);

/// Sign agreement of T_n at cos(2 pi a) and cos(2 pi k a) over one period of
/// a rational angle, by residue enumeration.
struct ChebyshevOrbit {
    std::int64_t period = 0;
    std::vector<std::uint8_t> agree; ///< agree[r] for n = r mod period
    std::int64_t agree_per_period = 0;
    Rational density;

    /// Exact agreement count over 0 <= n < big_n.
    std::uint64_t agree_count(std::uint64_t big_n) const;
};

ChebyshevOrbit chebyshev_orbit(const Rational& a, std::int64_t ratio);

} // namespace signcorr::lab
