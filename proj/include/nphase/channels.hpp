// channels.hpp: Kraus unravelings, the Π(A|ρ) Gram matrix, and extremal
// unravelings.
//
// A channel Φ(ρ) = Σ_j A_j ρ A_j† has many unravelings B_i = Σ_j A_j u_ji
// (U unitary). Each gives effect probabilities p_i = tr(A_i† A_i ρ), the
// diagonal of Π_ij = tr(A_i† A_j ρ). Diagonalizing Π picks out the
// unraveling whose probabilities are its eigenvalues.

#pragma once

#include "nphase/bounds.hpp"
#include "nphase/core.hpp"
#include "nphase/entropy.hpp"
#include "nphase/random.hpp"

#include <vector>

namespace nphase {

class KrausSet {
 public:
  // Throws unless every operator is dim_out × dim_in and Σ A†A = I.
  explicit KrausSet(std::vector<ComplexMatrix> operators, const Tolerances& tol = default_tolerances());

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return dim_out_; }
  std::size_t size() const noexcept { return ops_.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return ops_[i]; }
  const std::vector<ComplexMatrix>& operators() const noexcept { return ops_; }

  // The POVM {A_i† A_i} on the input space.
  Povm effects() const;

 private:
  std::size_t dim_in_ = 0;
  std::size_t dim_out_ = 0;
  std::vector<ComplexMatrix> ops_;
};

// Hermitian PSD matrix with unit trace (within 1e-9).
class GramMatrix {
 public:
  explicit GramMatrix(ComplexMatrix matrix);

  std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  DiscreteDistribution diagonal() const;

 private:
  ComplexMatrix m_;
};

DensityOperator apply_channel(const KrausSet& a, const DensityOperator& rho);

// Π_ij = tr(A_i† A_j ρ).
GramMatrix pi_matrix(const KrausSet& a, const DensityOperator& rho);

// B_i = Σ_j A_j u_ji. U must be unitary within 1e-8.
KrausSet remix_unraveling(const KrausSet& a, const ComplexMatrix& u);

// Remix by the eigenvectors of Π(A|ρ) (ascending eigenvalues, first nonzero
// component of each eigenvector real and positive).
KrausSet extremal_unraveling(const KrausSet& a, const DensityOperator& rho);

// Unified entropy of the effect probabilities diag Π(A|ρ).
double unraveling_entropy(const KrausSet& a, const DensityOperator& rho, const UnifiedParams& params);

// E_α^(s)(A|ρ) + E_β^(t)(B|ρ) against lemma1_min(g) for the effect POVMs.
BoundReport two_channel_bound(const KrausSet& a, const KrausSet& b, const DensityOperator& rho,
                              const ConjugatePair& pair, double s, double t);

// ---- presets -----------------------------------------------------------------

KrausSet identity_channel(std::size_t dim);

// ρ ↦ (1 − p)ρ + p I/d, as d² weighted Weyl (clock-and-shift) operators.
// p ∈ [0, 1 + 1/(d² − 1)].
KrausSet depolarizing_channel(double p, std::size_t dim);

// Qubit presets, γ ∈ [0, 1].
KrausSet phase_damping_channel(double gamma);
KrausSet amplitude_damping_channel(double gamma);

// `count` operators stacked from a Haar-random (count·dim) × dim isometry.
KrausSet random_kraus_set(Rng& rng, std::size_t dim, std::size_t count);

}  // namespace nphase
