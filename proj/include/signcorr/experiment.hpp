#pragma once

// Experiment orchestration: builds a sign-pair source from a family
// description, measures it, and attaches the matching prediction.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "signcorr/correlation.hpp"
#include "signcorr/rational.hpp"
#include "signcorr/schrodinger.hpp"
#include "signcorr/special_functions.hpp"

namespace signcorr::lab {

/// Inconsistent or invalid experiment description.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Family { hermite, laguerre, chebyshev, potential };

Family parse_family(const std::string& name);
const char* family_name(Family f);

/// A real input kept both as typed and, when it is a terminating decimal or
/// p/q fraction, as an exact rational.
struct PointValue {
    std::string text;
    double value = 0.0;
    std::optional<Rational> exact;

    static PointValue parse(const std::string& text);
};

/// Chebyshev angle a with cos(2 pi a) the evaluation point:
///   "p/q"             exact rational angle
///   "surd:a,b,c,d"    (a + b sqrt(c)) / d in 128-bit fixed point
///   "fixed:0.1234..." decimal expansion in 128-bit fixed point
/// Plain decimals are rejected so a rational angle is never taken for an
/// irrational one or the reverse.
special::AngleFraction parse_angle(const std::string& text);

struct ExperimentConfig {
    Family family = Family::hermite;
    std::optional<PointValue> x;  // hermite, potential
    std::optional<PointValue> y;
    std::optional<PointValue> r1; // laguerre
    std::optional<PointValue> r2;
    std::optional<int> dimension;
    std::optional<std::string> angle; // chebyshev
    std::optional<std::int64_t> ratio;
    std::vector<double> potential;    // potential: c_k of x^(2k)
    schrodinger::SolverConfig solver;
    std::optional<std::string> eigenpairs_file;

    std::uint64_t n = 0;
    /// auto | none | prop1 | prop2 | theorem1 | theorem2 | orbit
    std::string predictor = "auto";
    bool scan = false;
    /// auto (the prediction) or an explicit value in [0, 1]
    std::optional<std::string> target;
    std::uint64_t stride = 1;
    unsigned threads = 0;

    /// Chebyshev: prefix counts compared with the equidistributed reference.
    std::uint64_t reference_horizon = 10000;
    double reference_bound = 10.0;
};

struct ExperimentResult {
    nlohmann::json report;
    /// Every stride-th N in scan mode, the checkpoints otherwise.
    std::vector<RemainderPoint> series;
    bool series_has_remainder = false;
};

/// Throws ConfigError for inconsistent descriptions, NumericalError when the
/// eigenpair solve fails and SourceError when a source gives out.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// The report with `meta` removed, serialized; stable across runs and
/// thread counts.
std::string deterministic_dump(const nlohmann::json& report);

const char* library_version();

} // namespace signcorr::lab
