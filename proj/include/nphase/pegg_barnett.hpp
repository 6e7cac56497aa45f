// pegg_barnett.hpp: finite-N phase states and the N → ∞ phase density
//
// The phase basis of an (N+1)-dimensional truncation is
//
//     |θ_m⟩ = (N+1)^{-1/2} Σ_n e^{inθ_m} |n⟩,   θ_m = θ_0 + 2πm/(N+1).
//
// In the limit the phase statistics of a state ρ truncated at D levels are
// described by the trigonometric polynomial
//
//     P(θ) = (2π)^{-1} Σ_{m,n<D} ρ_mn e^{i(n−m)θ},
//
// which is evaluated exactly rather than extrapolated from finite N.

#pragma once

#include "nphase/bounds.hpp"
#include "nphase/core.hpp"
#include "nphase/entropy.hpp"

#include <optional>
#include <vector>

namespace nphase {

struct PhaseBasis {
  std::size_t dim;              // N + 1
  double theta0;
  std::vector<double> angles;   // θ_m
  std::vector<PureState> states;
};

PhaseBasis phase_basis(std::size_t n, double theta0 = 0.0);

// Σ θ_m |θ_m⟩⟨θ_m| on the (N+1)-dimensional space.
ComplexMatrix phase_operator(std::size_t n, double theta0 = 0.0);

struct PhaseMoment {
  double finite_n;  // tr(Θ^ν ρ) at the requested N
  double integral;  // ∫ θ^ν P(θ) dθ over [θ_0, θ_0 + 2π]
};

// Requires rho.dim() ≤ N + 1 (ρ is zero-padded).
PhaseMoment phase_moment(const DensityOperator& rho, unsigned order, std::size_t n, double theta0 = 0.0);

double phase_density_at(const DensityOperator& rho, double theta);

// P on `grid` uniform points over [0, 2π]. Values in [−1e-8, 0) are clamped
// to zero; anything more negative throws.
DensityFunction1D phase_density(const DensityOperator& rho, std::size_t grid = kDefaultGridPoints);

// r_m = ∫ P over each bin, integrated in closed form.
DiscreteDistribution phase_bins(const DensityOperator& rho, const PhasePartition& part);

// q_n = ⟨n|ρ|n⟩.
DiscreteDistribution number_distribution(const DensityOperator& rho);

// F(θ) = (2π)^{-1/2} Σ_n e^{−inθ} x_n, so that P(θ) = |F(θ)|² for a pure state.
cplx phase_amplitude(const PureState& psi, double theta);

// p_m = |⟨θ_m|ψ⟩|² in the (N+1)-dimensional space (ψ zero-padded).
DiscreteDistribution finite_phase_distribution(const PureState& psi, std::size_t n, double theta0 = 0.0);

// ---- Gaussian (multiphoton coherent state) approximation -----------------

// P̃(θ) = √(2|z|²/π) exp(−2|z|²ξ²), ξ the distance from θ to arg z wrapped
// into [−π, π].
double gaussian_phase_density(cplx z, double theta);

// W̃(n) = (2π|z|²)^{-1/2} exp(−(n − |z|²)²/(2|z|²)).
double gaussian_number_density(cplx z, double n);

struct GaussianPair {
  cplx z;
  DensityFunction1D phase;   // on [0, 2π]
  DensityFunction1D number;  // on [|z|² − 12|z|, |z|² + 12|z|]
};

// Requires |z| ≥ 3.
GaussianPair gaussian_pair(cplx z, std::size_t grid = kDefaultGridPoints);

// max over ξ of |(2π)^{-1/2} ∫ e^{iξκ} √W̃(κ) dκ − √P̃(ξ)|, with the
// transform done by quadrature.
double gaussian_fourier_residual(cplx z, std::size_t points = 201);

struct MultiphotonBinned {
  cplx z;
  DiscreteDistribution phase;   // r̃_m
  DiscreteDistribution number;  // q̃_n for n = first_n, first_n + 1, ...
  long first_n;
  double max_bin_width;
};

// r̃ from binning P̃; q̃_n = ∫_n^{n+1} W̃ over n ∈ [⌊|z|² − 10|z|⌋, ⌈|z|² + 10|z|⌉].
MultiphotonBinned multiphoton_binned(cplx z, const PhasePartition& part, std::size_t grid = kDefaultGridPoints);

BoundReport multiphoton_check(const MultiphotonBinned& binned, const ConjugatePair& pair, double s, double t);

// ---- number-phase relations -----------------------------------------------

struct NumberPhaseScenario {
  DensityOperator state;
  PhasePartition partition;
  std::size_t grid = kDefaultGridPoints;
  double tail_mass = 0.0;  // number-basis mass dropped by the truncation

  NumberPhaseScenario(DensityOperator state_, PhasePartition partition_, std::size_t grid_ = kDefaultGridPoints,
                      double tail_mass_ = 0.0);
};

// E_α^(s)(r) + E_β^(t)(q) against (1/ν) ln_μ((2π/Δϑ)^ν).
BoundReport theorem2_check(const NumberPhaseScenario& scn, const ConjugatePair& pair, double s, double t);

// R_α(P) + R_β(q) against ln 2π.
BoundReport continuous_renyi_check(const DensityOperator& rho, const ConjugatePair& pair,
                                   std::size_t grid = kDefaultGridPoints);

// E_α^(s)(P) + E_β^(t)(q) against (1/ν) ln_μ((2π)^ν). Empty when P exceeds
// one somewhere, where the relation is not claimed.
std::optional<BoundReport> continuous_unified_check(const DensityOperator& rho, const ConjugatePair& pair, double s,
                                                    double t, std::size_t grid = kDefaultGridPoints);

// ½ ∫ |P − Q| over the common grid.
double total_variation(const DensityFunction1D& p, const DensityFunction1D& q);

}  // namespace nphase
