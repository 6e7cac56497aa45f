// types.hpp: scalar/matrix aliases, error type, and validation tolerances

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace nphase {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Raised whenever an input violates a type invariant or an operation's
// precondition. Messages start with the name of the failing operation.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical tolerances used by validating constructors and operations.
// Defaults are the documented contract values; callers may override them
// (the CLI reads overrides from the "tolerances" config object).
struct Tolerances {
  double state_norm = 1e-10;          // |‖ψ‖₂ − 1|
  double hermitian = 1e-10;           // max |ρ − ρ†| entry
  double psd = 1e-10;                 // min eigenvalue ≥ −psd
  double trace = 1e-10;               // |tr ρ − 1|
  double completeness = 1e-10;        // Σ M_i = I, Σ A†A = I, per entry
  double eigh_hermitian = 1e-8;       // eigh input check
  double orthonormal = 1e-8;          // basis_povm input check
  double unitary = 1e-8;              // remix matrices
  double probability_clamp = 1e-10;   // negatives in [−clamp, 0) become 0
  double probability_drift = 1e-9;    // |Σ p − 1| allowed before renormalizing
  double truncation_tail = 1e-12;     // dropped Fock-space mass
  double gram_trace = 1e-9;           // Π(A|ρ) unit trace
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace nphase
