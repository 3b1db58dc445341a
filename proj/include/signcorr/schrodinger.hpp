#pragma once

// Eigenpairs of H_V = -(1/4 pi^2) d^2/dx^2 + V(x) for even polynomial V,
// by parity-split Numerov shooting on [0, L] with node-count bisection.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "signcorr/sign_sequence.hpp"

namespace signcorr::schrodinger {

/// Raised when the solver cannot deliver an eigenpair it trusts.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, int index, double lambda = 0.0)
        : std::runtime_error(what + " (eigenpair " + std::to_string(index) + ", lambda " + std::to_string(lambda) +
                             ")"),
          index_(index), lambda_(lambda)
    {
    }
    int index() const { return index_; }
    double lambda() const { return lambda_; }

private:
    int index_;
    double lambda_;
};

/// V(x) = sum_k c_k x^(2k) with positive leading coefficient.
class PotentialSpec {
public:
    /// Trailing zero coefficients are dropped; throws std::invalid_argument
    /// unless some coefficient of x^(2k), k >= 1, is left and the leading one
    /// is positive.
    explicit PotentialSpec(std::vector<double> even_coefficients);

    double operator()(double x) const;
    const std::vector<double>& coefficients() const { return coefficients_; }
    std::string str() const;

private:
    std::vector<double> coefficients_;
};

enum class Parity { even, odd };

inline const char* parity_name(Parity p) { return p == Parity::even ? "even" : "odd"; }

struct SolverConfig {
    int n_max = 50;
    double points_per_wavelength = 50.0;
    /// L is chosen with V(L) >= domain_margin * lambda(n_max), and far enough
    /// past the top turning point for the eigenfunction to decay by e^-20.
    double domain_margin = 2.0;
    /// Relative width of the final eigenvalue bracket.
    double eigenvalue_tolerance = 1e-10;
    int max_bisection_iterations = 200;
    /// 0 means resolve_threads() default.
    unsigned threads = 0;
};

/// One eigenfunction sampled at x_k = k * step, k = 0..M, on [0, L];
/// L^2(R)-normalized with sgn w(0) = (-1)^m for n = 2m and
/// sgn w'(0) = (-1)^m for n = 2m + 1.
struct Eigenpair {
    int n = 0;
    Parity parity = Parity::even;
    double lambda = 0.0;
    double w0 = 0.0;
    double dw0 = 0.0;
    double step = 0.0;
    std::vector<double> values;

    double domain_length() const { return step * static_cast<double>(values.size() - 1); }
    /// Linear interpolation on the grid, reflected by parity for x < 0.
    double value_at(double x) const;
    /// Sign changes strictly inside (0, L).
    int interior_nodes() const;
};

struct EigenpairSet {
    PotentialSpec potential{{0.0, 1.0}};
    double domain_length = 0.0;
    double step = 0.0;
    std::vector<Eigenpair> pairs;

    std::vector<double> eigenvalues() const;
};

/// WKB estimate of lambda_n from the quantization
/// integral of sqrt(lambda - V) over {V < lambda} = (n + 1/2) / 2.
double semiclassical_eigenvalue(const PotentialSpec& v, int n);

/// Solves n = 0..cfg.n_max. Throws NumericalError when a bracket fails to
/// converge within the iteration cap or the node count of a solved
/// eigenfunction does not match floor(n/2).
EigenpairSet solve_eigenpairs(const PotentialSpec& v, const SolverConfig& cfg);

/// sup over grid points in [0, K] of |w_n(x) - A_n cos(2 pi (sqrt(lambda_n) x - n/4))| / A_n
/// with A_n = sqrt(w_n(0)^2 + w_n'(0)^2 / (4 pi^2 lambda_n)).
/// Throws std::invalid_argument when K exceeds the solved domain.
double wkb_residual(const Eigenpair& pair, double k);

/// Sign stream n -> sgn w_n(x) over a solved set. Throws
/// std::invalid_argument when x = 0 or |x| > L; next() throws SourceError
/// past the last solved index.
std::unique_ptr<SignSequence> eigenpair_sign_sequence(std::shared_ptr<const EigenpairSet> set, double x);

std::unique_ptr<SignPairSource> eigenpair_sign_source(std::shared_ptr<const EigenpairSet> set, double x, double y);

} // namespace signcorr::schrodinger
