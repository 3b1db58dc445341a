#pragma once

// Closed-form sign-correlation limits.

#include <cstdint>
#include <string>
#include <vector>

#include "signcorr/rational.hpp"

namespace signcorr::predict {

/// Coprime nonzero integers p, q describing phi(x) / phi(y) = p / q.
class RationalRatio {
public:
    /// Reduces to lowest terms. Throws std::invalid_argument when p q = 0.
    RationalRatio(std::int64_t p, std::int64_t q);
    static RationalRatio from(const Rational& r) { return RationalRatio(r.num(), r.den()); }

    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    std::string str() const { return std::to_string(p_) + "/" + std::to_string(q_); }

private:
    std::int64_t p_;
    std::int64_t q_;
};

struct Theorem1Result {
    double limit = 0.5;
    /// |p q| < 3: the value is still exact, but the [1/3, 2/3] bound argument
    /// (1/|pq| <= 1/3) does not cover this ratio.
    bool below_bound_regime = false;
};

/// 1/2 + (1/2) * average of Phi along (p t - theta, q t - theta).
Theorem1Result theorem1_limit(const RationalRatio& ratio, double theta);

/// Limit for even-potential eigenfunctions: 1/2 + 1/(2pq) when
/// p = q = 1 (mod 4) or p = q = 3 (mod 4), else 1/2.
double theorem2_limit(const RationalRatio& ratio);
/// Irrational x / y.
inline constexpr double theorem2_limit_irrational() { return 0.5; }

struct PhaseClass {
    double theta = 0.0;
    double weight = 1.0;
};

/// Sequence w_n(x) ~ amplitude(x, n) cos(2 pi (mu_n phi(x) - theta_n)) whose
/// phase offsets theta_n cycle through a finite set of classes.
class WkbFamily {
public:
    /// Weights must be positive and sum to 1 (within 1e-12).
    explicit WkbFamily(std::vector<PhaseClass> classes, std::string frequency_map = {},
                       bool amplitude_positive = true);

    static WkbFamily single(double theta, std::string frequency_map = {});
    /// Phases n/4 mod 1 folded by the global sign flip onto {0, 1/4}.
    static WkbFamily even_potential(std::string frequency_map = "sqrt(lambda_n) x");

    const std::vector<PhaseClass>& classes() const { return classes_; }
    const std::string& frequency_map() const { return frequency_map_; }
    bool amplitude_positive() const { return amplitude_positive_; }

private:
    std::vector<PhaseClass> classes_;
    std::string frequency_map_;
    bool amplitude_positive_;
};

/// 1/2 + sum_c weight_c * (1/2) * average of Phi along (p t - theta_c, q t - theta_c).
double wkb_family_limit(const RationalRatio& ratio, const WkbFamily& family);

/// Hermite functions at x and y = m x, m a nonzero integer.
double hermite_limit(std::int64_t m);
/// Same, from exact points; throws unless y / x is an integer.
double hermite_limit(const Rational& x, const Rational& y);

/// Radial Laguerre functions in dimension d at radii with r1 / r2 = p / q.
double laguerre_limit(const RationalRatio& ratio, int d);
/// Same, from exact positive radii.
double laguerre_limit(const Rational& r1, const Rational& r2, int d);

} // namespace signcorr::predict
