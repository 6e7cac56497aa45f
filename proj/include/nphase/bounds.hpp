// bounds.hpp: two-measurement uncertainty bounds for unified entropies
//
// For a conjugate pair 1/α + 1/β = 2 and entropy parameters (s, t) with
// s·t > 0 (or s = t = 0, or the Shannon pair), every bound here has the form
//
//     (1/ν) ln_μ(X^ν),
//
// with (μ, ν) from select_mu_nu and X an overlap-dependent constant:
// g^{−2} (lemma1_min), N (mub_bound), 2π/Δφ (angle_bound),
// κπ/Δϑ (multiphoton_bound). ν = 0 gives ln X.

#pragma once

#include "nphase/core.hpp"
#include "nphase/entropy.hpp"

#include <optional>
#include <string>
#include <variant>

namespace nphase {

struct MuNu {
  double mu;
  double nu;  // 0 for the Rényi (s = t = 0) and Shannon cases
};

// μ = max(α, β) for s, t > 0 and min(α, β) for s, t < 0; ν is the entropy
// parameter paired with μ. Throws for s·t < 0 or exactly one of s, t zero,
// unless the pair is Shannon.
MuNu select_mu_nu(const ConjugatePair& pair, double s, double t);

// (1/ν) ln_μ(e^{ν·log_x}), evaluated without cancellation for ν → 0, μ → 1.
double scaled_alpha_log(double log_x, const MuNu& mn);

// min over D of h(ξ, ζ); equals (1/ν) ln_μ(g^{−2ν}). Requires 0 < g ≤ 1.
double lemma1_min(double g, const ConjugatePair& pair, double s, double t);

struct HMinimum {
  double value;
  double xi;
  double zeta;
};

// Direct minimization of h(ξ, ζ) = (ξ^s − 1)/((1 − α)s) + (ζ^t − 1)/((1 − β)t)
// over points sampled along the boundary of
// D = {0 ≤ ξ ≤ 1, ζ ≥ 1, c ξ^{β/α} ≤ ζ}, c = g^{−2(1−β)} (orders arranged so
// that α > 1 > β). Used as an oracle for lemma1_min.
HMinimum brute_force_h_min(double g, const ConjugatePair& pair, double s, double t, std::size_t grid);

// Default cutoff below which an outcome probability counts as zero in g.
inline constexpr double kZeroProbability = 1e-12;

// g(M,N|ρ) = max |tr(M_i N_j ρ)| / √(p_i q_j) over outcomes with p_i, q_j
// above the cutoff.
double g_function(const Povm& m, const Povm& n, const DensityOperator& rho,
                  double zero_cutoff = kZeroProbability);

// f̄(M,N) = max ‖M_i^{1/2} N_j^{1/2}‖_∞.
double f_bar(const Povm& m, const Povm& n);

struct BoundReport {
  std::string scenario;
  double alpha = 0.0;
  double beta = 0.0;
  double s = 0.0;
  double t = 0.0;
  double entropy_sum = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // entropy_sum − bound
};

BoundReport make_report(std::string scenario, const ConjugatePair& pair, double s, double t,
                        double entropy_sum, double bound);

// E_α^(s)(p) + E_β^(t)(q) against the state-dependent bound built from g.
BoundReport theorem1_bound(const Povm& m, const Povm& n, const DensityOperator& rho,
                           const ConjugatePair& pair, double s, double t);

// Same entropy sum against the state-independent bound built from f̄, or
// from `overlap` when a sharper constant is known.
BoundReport theorem1_bound_state_independent(const Povm& m, const Povm& n, const DensityOperator& rho,
                                             const ConjugatePair& pair, double s, double t,
                                             std::optional<double> overlap = std::nullopt);

// Mutually unbiased bases in dimension N: (1/ν) ln_μ(N^ν).
double mub_bound(std::size_t dim, const ConjugatePair& pair, double s, double t);

// Angle / angular momentum with bins no wider than Δφ: (1/ν) ln_μ((2π/Δφ)^ν).
double angle_bound(double delta_phi, const ConjugatePair& pair, double s, double t);

// κ = √(α^{1/(α−1)} β^{1/(β−1)}), rising from 2 at β = 1/2 to e at β = 1.
double multiphoton_kappa(const ConjugatePair& pair);
// Same, parametrized by β alone; admits the β = 1/2 endpoint.
double multiphoton_kappa(double beta);

// (1/ν) ln_μ((κπ/Δϑ)^ν). Only meaningful for Gaussian (multiphoton
// coherent-state) statistics; see multiphoton_check.
double multiphoton_bound(double delta_theta, const ConjugatePair& pair, double s, double t);

using NormSource = std::variant<DiscreteDistribution, DensityFunction1D>;

double norm_functional(const NormSource& src, double order);

struct NormSlack {
  double forward;   // f^{2(1−β)/β}‖q‖_β − ‖p‖_α
  double backward;  // f^{2(1−β)/β}‖p‖_β − ‖q‖_α
  double min() const noexcept { return forward < backward ? forward : backward; }
};

// Slacks of the paired norm inequalities ‖p‖_α ≤ f^{2(1−β)/β}‖q‖_β and the
// mirrored one, with α the larger order of the pair.
NormSlack verify_norm_inequality(const NormSource& p, const NormSource& q, double factor,
                                 const ConjugatePair& pair);

}  // namespace nphase
