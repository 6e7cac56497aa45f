// core.hpp: states, measurements, and the dense linear algebra they need
//
// Everything here works in a finite (possibly truncated) number basis
// |0⟩, |1⟩, …, |dim−1⟩. All types validate their invariants on construction
// and are immutable afterwards.

#pragma once

#include "nphase/distribution.hpp"
#include "nphase/types.hpp"

#include <cstddef>
#include <vector>

namespace nphase {

// Unit vector in a dim-dimensional space; amplitudes are number-basis
// coefficients x_n = ⟨n|ψ⟩.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes, const Tolerances& tol = default_tolerances());

  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  const ComplexVector& amplitudes() const noexcept { return amps_; }
  cplx operator[](std::size_t n) const { return amps_(static_cast<Eigen::Index>(n)); }

  // Zero-padded copy in a larger space.
  PureState embedded(std::size_t new_dim) const;

 private:
  ComplexVector amps_;
};

// Hermitian, positive semidefinite, unit-trace matrix.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix matrix, const Tolerances& tol = default_tolerances());

  static DensityOperator from_pure(const PureState& psi);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(rho_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return rho_; }

  // ρ ⊕ 0 in a space of dimension new_dim ≥ dim().
  DensityOperator embedded(std::size_t new_dim) const;

 private:
  ComplexMatrix rho_;
};

// Finite POVM: Hermitian PSD effects summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> effects, const Tolerances& tol = default_tolerances());

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return effects_.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return effects_[i]; }
  const std::vector<ComplexMatrix>& effects() const noexcept { return effects_; }

 private:
  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> effects_;
};

struct Eigensystem {
  RealVector values;     // ascending
  ComplexMatrix vectors;  // columns are eigenvectors, unitary
};

// Hermitian eigendecomposition. Throws ValidationError when the input is
// not square or not Hermitian within `hermitian_tol`.
Eigensystem eigh(const ComplexMatrix& h, double hermitian_tol = 1e-8);

// Principal square root of a PSD matrix; eigenvalues in [−1e-10, 0) are
// treated as zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& a);

// Hilbert–Schmidt inner product tr(A†B).
cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

// p_i = tr(M_i ρ).
DiscreteDistribution measure_probabilities(const Povm& m, const DensityOperator& rho,
                                           const Tolerances& tol = default_tolerances());

// ---- state constructors -------------------------------------------------

PureState fock_state(std::size_t n, std::size_t dim);

// Truncation used when no dim is given: ceil(|z|² + 12|z| + 20).
std::size_t coherent_default_dim(cplx z);

// Poisson mass Σ_{n ≥ dim} e^{−λ} λⁿ/n! dropped by truncating at dim.
double poisson_tail_mass(double lambda, std::size_t dim);

// |z⟩ truncated to dim levels and renormalized. Throws when the dropped
// tail mass exceeds tol.truncation_tail.
PureState coherent_state(cplx z, std::size_t dim, const Tolerances& tol = default_tolerances());
PureState coherent_state(cplx z);

// Smallest dim whose geometric tail (n̄/(1+n̄))^dim is below 1e-13.
std::size_t thermal_default_dim(double nbar);

// Bose–Einstein diagonal state with mean occupation nbar, truncated and
// renormalized.
DensityOperator thermal_state(double nbar, std::size_t dim, const Tolerances& tol = default_tolerances());
DensityOperator thermal_state(double nbar);

// ---- bases and projective measurements ----------------------------------

std::vector<PureState> number_basis(std::size_t dim);

// Columns of the unitary DFT matrix: e^{2πi kl/dim}/√dim.
std::vector<PureState> fourier_basis(std::size_t dim);

// Rank-one projectors onto an orthonormal basis.
Povm basis_povm(const std::vector<PureState>& vectors, const Tolerances& tol = default_tolerances());

}  // namespace nphase
