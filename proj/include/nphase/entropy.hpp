// entropy.hpp: unified (α,s)-entropies and their Rényi / Tsallis / Shannon
// members, α-logarithm and α-exponential, norm-like functionals, and gridded
// one-dimensional densities with their binning.
//
// Conventions: 0·ln 0 = 0 and 0^β = 0. The unified entropy
//
//     E_α^(s)(p) = ((Σ p^α)^s − 1) / ((1 − α) s)
//
// is evaluated as r·φ(s(1 − α)r), where r is the Rényi entropy and
// φ(x) = expm1(x)/x. This form is exact, reduces to Rényi at s = 0 and to
// Shannon at α = 1, and keeps full precision near both limits.

#pragma once

#include "nphase/distribution.hpp"
#include "nphase/types.hpp"

#include <functional>
#include <span>
#include <vector>

namespace nphase {

// Entropy parameters (α, s). α = 1 means Shannon whatever s is; s = 0 means
// Rényi.
struct UnifiedParams {
  double alpha;
  double s;

  UnifiedParams(double alpha_, double s_);

  bool is_shannon() const noexcept { return alpha == 1.0; }
  bool is_renyi() const noexcept { return s == 0.0; }
};

// Orders obeying 1/α + 1/β = 2 (both > 1/2).
class ConjugatePair {
 public:
  ConjugatePair(double alpha, double beta);

  static ConjugatePair from_alpha(double alpha);
  static ConjugatePair from_beta(double beta);
  static ConjugatePair shannon() { return ConjugatePair(1.0, 1.0); }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  bool is_shannon() const noexcept { return alpha_ == 1.0 && beta_ == 1.0; }

  // The order above one, and the one below (both 1 for Shannon).
  double larger() const noexcept { return alpha_ > beta_ ? alpha_ : beta_; }
  double smaller() const noexcept { return alpha_ > beta_ ? beta_ : alpha_; }

 private:
  double alpha_;
  double beta_;
};

// expm1(x)/x with the removable singularity filled in.
double expm1_ratio(double x) noexcept;

// ln_α(x) = (x^{1−α} − 1)/(1 − α); natural log at α = 1. Requires x > 0.
double alpha_log(double x, double alpha);

// exp_α(x) = (1 + (1 − α)x)_+^{1/(1−α)}; natural exp at α = 1. Returns
// +inf when the base vanishes and the exponent is negative.
double alpha_exp(double x, double alpha);

// (Σ p^β)^{1/β}.
double beta_functional(const DiscreteDistribution& p, double beta);

double unified_entropy(const DiscreteDistribution& p, const UnifiedParams& params);
double renyi_entropy(const DiscreteDistribution& p, double alpha);
double tsallis_entropy(const DiscreteDistribution& p, double alpha);
double shannon_entropy(const DiscreteDistribution& p);

// ---- continuous densities -------------------------------------------------

inline constexpr std::size_t kDefaultGridPoints = 4097;  // 4096 uniform intervals

// Non-negative samples of a density on a strictly increasing grid. Full-range
// integrals use the composite trapezoid rule; partial-range integrals use a
// local four-point cubic interpolant (exact for cubics).
class DensityFunction1D {
 public:
  DensityFunction1D(std::vector<double> grid, std::vector<double> values, double normalization_tol = 1e-6);

  // Samples f on n uniform points spanning [lo, hi] (both included).
  static DensityFunction1D sample(const std::function<double(double)>& f, double lo, double hi,
                                  std::size_t n = kDefaultGridPoints, double normalization_tol = 1e-6);

  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return grid_.size(); }
  double lower() const noexcept { return grid_.front(); }
  double upper() const noexcept { return grid_.back(); }
  double max_value() const noexcept;

  // Trapezoid sum of g(value_i).
  double integrate(const std::function<double(double)>& g) const;
  double total() const;

  // ∫_a^b of the piecewise-cubic interpolant, lower() ≤ a ≤ b ≤ upper().
  double integrate_between(double a, double b) const;

  // Number of grid nodes inside [a, b].
  std::size_t nodes_in(double a, double b) const;

 private:
  double cell_integral(std::size_t cell, double a, double b) const;

  std::vector<double> grid_;
  std::vector<double> values_;
  std::vector<double> weights_;
};

// (∫ P^β)^{1/β}.
double beta_functional(const DensityFunction1D& p, double beta);

struct ContinuousEntropy {
  double value;
  // Whether ‖P‖_α ≤ 1 (α > 1) or ‖P‖_α ≥ 1 (α < 1) holds; for Shannon,
  // whether the value is non-negative. False exactly when the value is
  // negative.
  bool norm_condition_holds;
  // P(θ) ≤ 1 everywhere: the sufficient condition for non-negativity.
  bool density_at_most_one;
};

ContinuousEntropy continuous_unified_entropy(const DensityFunction1D& p, const UnifiedParams& params);

// Increasing edges 0 = ϑ_0 < … < ϑ_M = 2π with every bin narrower than 2π.
class PhasePartition {
 public:
  explicit PhasePartition(std::vector<double> edges);

  static PhasePartition equal(std::size_t bins);

  std::span<const double> edges() const noexcept { return edges_; }
  std::size_t bins() const noexcept { return edges_.size() - 1; }
  double width(std::size_t m) const { return edges_[m + 1] - edges_[m]; }
  double max_width() const noexcept;

 private:
  std::vector<double> edges_;
};

inline constexpr std::size_t kMinNodesPerBin = 8;

// r_m = ∫ over bin m. Throws when a bin holds fewer than kMinNodesPerBin grid
// nodes, or when Σ r_m misses one by more than 1e-8.
DiscreteDistribution bin_density(const DensityFunction1D& p, const PhasePartition& part);

}  // namespace nphase
