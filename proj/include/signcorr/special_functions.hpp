#pragma once

// Sign streams of Hermite functions, radial Laguerre functions and
// Chebyshev polynomials at a fixed evaluation point.

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "signcorr/fixed_point.hpp"
#include "signcorr/rational.hpp"
#include "signcorr/sign_sequence.hpp"

namespace signcorr::special {

/// Relative threshold under which a recurrence value counts as a zero-hit.
inline constexpr double kRecurrenceZeroTolerance = 1e-12;

/// Evaluation point x of phi_n(x) = H_n(sqrt(2 pi) x) exp(-pi x^2), carried
/// together with the physicists' argument t = sqrt(2 pi) x.
class HermitePoint {
public:
    explicit HermitePoint(double x);
    double x() const { return x_; }
    double t() const { return t_; }

private:
    double x_;
    double t_;
};

/// Values psi_0(t), ..., psi_{count-1}(t) of the L^2(dt)-normalized
/// physicists' Hermite functions. Underflows to 0 once t^2/2 exceeds the
/// double exponent range (|t| > ~38); use HermiteSignSequence for signs there.
std::vector<double> hermite_functions(double t, std::size_t count);

/// Eigenfunction of -(1/4pi^2) d^2/dx^2 + x^2 with eigenvalue (2n+1)/(2pi),
/// normalized in L^2(dx): (2pi)^(1/4) psi_n(sqrt(2pi) x).
double hermite_eigenfunction(std::size_t n, double x);

/// Streams sgn phi_n(x) using the normalized Hermite-function recurrence
/// with the Gaussian factor dropped and periodic rescaling, so no t and n
/// overflow or underflow.
class HermiteSignSequence final : public SignSequence {
public:
    explicit HermiteSignSequence(HermitePoint point);

    Sign next() override;
    std::uint64_t index() const override { return n_; }
    void seek(std::uint64_t n) override;
    bool random_access() const override { return false; }
    std::unique_ptr<SignSequence> clone() const override { return std::make_unique<HermiteSignSequence>(*this); }
    std::string describe() const override;

private:
    void reset();

    HermitePoint point_;
    std::uint64_t n_ = 0;
    double prev_ = 0.0; // psi_{n-1}, scaled
    double cur_ = 1.0;  // psi_n, scaled
};

SignSequenceResult hermite_sign_sequence(const HermitePoint& point, std::uint64_t count);

/// Parameter nu > -1 and the recurrence argument z = 2 pi r^2 of
/// L_n^nu(2 pi r^2) exp(-pi r^2).
class LaguerreParams {
public:
    /// Radial functions on R^d: nu = d/2 - 1.
    static LaguerreParams from_dimension(int d, double r);
    static LaguerreParams from_radius(double nu, double r);
    /// Direct argument z, bypassing the radius (exact z values for tests).
    static LaguerreParams from_argument(double nu, double z);

    double nu() const { return nu_; }
    double r() const { return r_; }
    double z() const { return z_; }

private:
    LaguerreParams(double nu, double r, double z);
    double nu_;
    double r_;
    double z_;
};

/// Values L_0^nu(z), ..., L_{count-1}^nu(z) by the three-term recurrence.
std::vector<double> laguerre_polynomials(double nu, double z, std::size_t count);

class LaguerreSignSequence final : public SignSequence {
public:
    explicit LaguerreSignSequence(LaguerreParams params);

    Sign next() override;
    std::uint64_t index() const override { return n_; }
    void seek(std::uint64_t n) override;
    bool random_access() const override { return false; }
    std::unique_ptr<SignSequence> clone() const override { return std::make_unique<LaguerreSignSequence>(*this); }
    std::string describe() const override;

private:
    void reset();

    LaguerreParams params_;
    std::uint64_t n_ = 0;
    double prev_ = 0.0;
    double cur_ = 1.0;
};

SignSequenceResult laguerre_sign_sequence(const LaguerreParams& params, std::uint64_t count);

/// a = arccos(x) / (2 pi) in (0, 1/2) for a Chebyshev point x = cos(2 pi a),
/// held either as an exact fraction or as a 128-bit fixed-point value for
/// irrational angles.
class AngleFraction {
public:
    explicit AngleFraction(Rational a);
    explicit AngleFraction(FixedPointFraction a);

    bool is_rational() const { return std::holds_alternative<Rational>(value_); }
    const Rational& rational() const { return std::get<Rational>(value_); }
    const FixedPointFraction& fixed() const { return std::get<FixedPointFraction>(value_); }
    double to_double() const;
    std::string str() const;

    /// k * a, which must again lie in (0, 1/2).
    AngleFraction scaled(std::int64_t k) const;

private:
    std::variant<Rational, FixedPointFraction> value_;
};

/// Streams sgn T_n(cos 2 pi a) = sgn cos(2 pi frac(n a)). Rational angles use
/// integer residues mod the denominator; irrational ones the fixed-point
/// rotation. Both are random access.
class ChebyshevSignSequence final : public SignSequence {
public:
    explicit ChebyshevSignSequence(AngleFraction a);

    Sign next() override;
    std::uint64_t index() const override { return n_; }
    void seek(std::uint64_t n) override;
    bool random_access() const override { return true; }
    std::unique_ptr<SignSequence> clone() const override { return std::make_unique<ChebyshevSignSequence>(*this); }
    std::string describe() const override;

    const AngleFraction& angle() const { return angle_; }

private:
    AngleFraction angle_;
    std::uint64_t n_ = 0;
    std::int64_t residue_ = 0;    // n * num mod den, rational case
    FixedPointFraction phase_{};  // frac(n a), irrational case
};

SignSequenceResult chebyshev_sign_sequence(const AngleFraction& a, std::uint64_t count);

} // namespace signcorr::special
