#pragma once

// Averages of Phi(x, y) = sgn(cos(2 pi x) cos(2 pi y)) along straight lines
// of the two-torus.

#include <cstdint>

#include "signcorr/rational.hpp"
#include "signcorr/sign.hpp"

namespace signcorr::torus {

/// A cosine factor is treated as zero within this distance of a quarter-integer.
inline constexpr double kZeroTolerance = 1e-12;

/// sgn(cos(2 pi x) cos(2 pi y)), zero when either factor is within
/// kZeroTolerance of a zero.
Sign phi(double x, double y);

/// Closed ray t -> (p t - alpha, q t - beta) with coprime nonzero integer
/// direction and phases reduced to [0, 1).
class TorusRay {
public:
    /// Reduces (A, B) to lowest terms; signs are kept. Throws
    /// std::invalid_argument when either component is zero.
    TorusRay(std::int64_t a, std::int64_t b, double alpha, double beta);

    /// Ray with equal phases, as used by the sign-correlation limits.
    static TorusRay diagonal(std::int64_t p, std::int64_t q, double theta) { return TorusRay(p, q, theta, theta); }

    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

private:
    std::int64_t p_;
    std::int64_t q_;
    double alpha_;
    double beta_;
};

/// Same ray with exact rational phases, for the rational breakpoint oracle.
class ExactTorusRay {
public:
    ExactTorusRay(std::int64_t a, std::int64_t b, Rational alpha, Rational beta);

    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    const Rational& alpha() const { return alpha_; }
    const Rational& beta() const { return beta_; }

private:
    std::int64_t p_;
    std::int64_t q_;
    Rational alpha_;
    Rational beta_;
};

/// Line t -> (t, a t + b) with a slope the caller declares irrational.
struct IrrationalRay {
    double a = 0.0;
    double b = 0.0;
};

/// Triangle-wave value of sum_{l>=0} cos(2 pi (2l+1) u) / (2l+1)^2,
/// namely (pi^2 / 8) (1 - 4 |u - round(u)|).
double odd_cosine_series(double u);

/// Long-time average of Phi along the ray, from the Fourier closed form.
/// Exactly 0 when p or q is even.
double ray_average_closed_form(const TorusRay& ray);

/// p q times the closed-form average: +-(1 - 4 |remainder(p beta - q alpha, 1)|),
/// or 0 when p or q is even.
double ray_average_times_pq(const TorusRay& ray);

/// Integral of Phi(p t - alpha, q t - beta) over one period, summed
/// piece by piece between the zero crossings of the two factors.
double ray_average_breakpoints(const TorusRay& ray);

/// Exact rational version of ray_average_breakpoints.
Rational ray_average_breakpoints(const ExactTorusRay& ray);

struct LineAverage {
    double value = 0.0;              ///< (1/T) * integral over [0, T]
    double half_horizon_value = 0.0; ///< same average over [0, T/2]
    std::uint64_t breakpoints = 0;   ///< sign changes integrated over
    /// Set when the average shows no sign of decaying towards 0, which for a
    /// declared-irrational slope indicates the slope was in fact rational.
    bool non_decaying = false;
};

/// (1/T) * integral_0^T Phi(t, a t + b) dt, integrated exactly between zero
/// crossings. Throws std::invalid_argument when T <= 0.
LineAverage ray_average_monte_carlo(const IrrationalRay& ray, double horizon);

enum class SignPattern { agree, opposite };

/// Maps a sign pair to its pattern class up to a global flip. Throws
/// std::invalid_argument unless both entries are +1 or -1.
SignPattern make_sign_pattern(int first, int second);

/// Fraction of a period the ray spends on the given sign pattern,
/// (1 +- average) / 2.
double sign_pattern_integral(const TorusRay& ray, SignPattern pattern);

} // namespace signcorr::torus
