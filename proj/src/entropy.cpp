#include "nphase/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

namespace nphase {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Below this distance from α = 1 the Rényi entropy is taken from its
// second-order expansion around the Shannon value.
constexpr double kAlphaNearOne = 1e-6;

// Rényi entropy ln(Σ w q^α)/(1 − α) of weighted samples, q = p / Σ w p.
// Discrete distributions use unit weights; densities use quadrature weights.
template <class WeightFn>
double renyi_core(std::span<const double> p, WeightFn weight, double alpha) {
  double z = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) z += weight(i) * p[i];
  if (!(z > 0.0)) throw ValidationError("entropy: distribution has zero total mass");

  const double delta = alpha - 1.0;
  if (std::abs(delta) < kAlphaNearOne) {
    double h = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double q = p[i] / z;
      if (q <= 0.0) continue;
      const double lq = std::log(q);
      h -= weight(i) * q * lq;
      m2 += weight(i) * q * lq * lq;
    }
    if (delta == 0.0) return h;
    return h - 0.5 * delta * (m2 - h * h);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = p[i] / z;
    if (q > 0.0) s += weight(i) * std::pow(q, alpha);
  }
  return std::log(s) / (1.0 - alpha);
}

double unified_from_renyi(double renyi, const UnifiedParams& params) {
  return renyi * expm1_ratio(params.s * (1.0 - params.alpha) * renyi);
}

}  // namespace

// ---- parameters ---------------------------------------------------------------

UnifiedParams::UnifiedParams(double alpha_, double s_) : alpha(alpha_), s(s_) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("UnifiedParams: alpha must be finite and > 0");
  if (!std::isfinite(s)) throw ValidationError("UnifiedParams: s must be finite");
}

ConjugatePair::ConjugatePair(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.5) || !(beta > 0.5) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw ValidationError("ConjugatePair: both orders must be finite and > 1/2");
  const double gap = 1.0 / alpha + 1.0 / beta - 2.0;
  if (std::abs(gap) > 1e-12)
    throw ValidationError("ConjugatePair: 1/alpha + 1/beta = " + fmt(gap + 2.0) + ", expected 2");
}

ConjugatePair ConjugatePair::from_alpha(double alpha) {
  if (!(alpha > 0.5)) throw ValidationError("ConjugatePair::from_alpha: alpha must be > 1/2");
  if (alpha == 1.0) return shannon();
  return ConjugatePair(alpha, alpha / (2.0 * alpha - 1.0));
}

ConjugatePair ConjugatePair::from_beta(double beta) {
  if (!(beta > 0.5)) throw ValidationError("ConjugatePair::from_beta: beta must be > 1/2");
  if (beta == 1.0) return shannon();
  return ConjugatePair(beta / (2.0 * beta - 1.0), beta);
}

// ---- α-calculus ----------------------------------------------------------------

double expm1_ratio(double x) noexcept {
  if (std::abs(x) < 1e-9) return 1.0 + 0.5 * x;
  return std::expm1(x) / x;
}

double alpha_log(double x, double alpha) {
  if (!(x > 0.0)) throw ValidationError("alpha_log: argument must be > 0");
  const double lx = std::log(x);
  return lx * expm1_ratio((1.0 - alpha) * lx);
}

double alpha_exp(double x, double alpha) {
  if (alpha == 1.0) return std::exp(x);
  const double k = 1.0 - alpha;
  const double base = 1.0 + k * x;
  if (base <= 0.0) return k > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::exp(std::log1p(k * x) / k);
}

// ---- discrete functionals ---------------------------------------------------------

double beta_functional(const DiscreteDistribution& p, double beta) {
  if (!(beta > 0.0)) throw ValidationError("beta_functional: beta must be > 0");
  double s = 0.0;
  for (double x : p.probs())
    if (x > 0.0) s += std::pow(x, beta);
  return std::pow(s, 1.0 / beta);
}

double unified_entropy(const DiscreteDistribution& p, const UnifiedParams& params) {
  const double r = renyi_core(p.probs(), [](std::size_t) { return 1.0; }, params.alpha);
  // Discrete entropies are non-negative; only rounding can push them below.
  return std::max(0.0, unified_from_renyi(r, params));
}

double renyi_entropy(const DiscreteDistribution& p, double alpha) { return unified_entropy(p, {alpha, 0.0}); }
double tsallis_entropy(const DiscreteDistribution& p, double alpha) { return unified_entropy(p, {alpha, 1.0}); }
double shannon_entropy(const DiscreteDistribution& p) { return unified_entropy(p, {1.0, 0.0}); }

// ---- DensityFunction1D ---------------------------------------------------------------

DensityFunction1D::DensityFunction1D(std::vector<double> grid, std::vector<double> values, double normalization_tol)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() < 2) throw ValidationError("DensityFunction1D: need at least two grid points");
  if (grid_.size() != values_.size()) throw ValidationError("DensityFunction1D: grid/value size mismatch");
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!std::isfinite(grid_[i]) || !std::isfinite(values_[i]))
      throw ValidationError("DensityFunction1D: non-finite sample");
    if (values_[i] < 0.0) throw ValidationError("DensityFunction1D: negative density value");
    if (i > 0 && !(grid_[i] > grid_[i - 1])) throw ValidationError("DensityFunction1D: grid not strictly increasing");
  }
  weights_.assign(grid_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    const double h = grid_[i + 1] - grid_[i];
    weights_[i] += 0.5 * h;
    weights_[i + 1] += 0.5 * h;
  }
  const double tot = total();
  if (std::abs(tot - 1.0) > normalization_tol)
    throw ValidationError("DensityFunction1D: integrates to " + fmt(tot) + ", expected 1");
}

DensityFunction1D DensityFunction1D::sample(const std::function<double(double)>& f, double lo, double hi,
                                            std::size_t n, double normalization_tol) {
  if (n < 2 || !(hi > lo)) throw ValidationError("DensityFunction1D::sample: need n >= 2 and hi > lo");
  std::vector<double> grid(n), values(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = (i + 1 == n) ? hi : lo + h * static_cast<double>(i);
    values[i] = f(grid[i]);
  }
  return DensityFunction1D(std::move(grid), std::move(values), normalization_tol);
}

double DensityFunction1D::max_value() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

double DensityFunction1D::integrate(const std::function<double(double)>& g) const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += weights_[i] * g(values_[i]);
  return s;
}

double DensityFunction1D::total() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += weights_[i] * values_[i];
  return s;
}

double DensityFunction1D::cell_integral(std::size_t cell, double a, double b) const {
  const std::size_t n = grid_.size();
  if (n < 4) {
    // linear interpolation
    const double x0 = grid_[cell], x1 = grid_[cell + 1];
    const double f0 = values_[cell], f1 = values_[cell + 1];
    auto f = [&](double x) { return f0 + (f1 - f0) * (x - x0) / (x1 - x0); };
    return 0.5 * (b - a) * (f(a) + f(b));
  }
  const std::size_t j0 = std::min(cell == 0 ? 0 : cell - 1, n - 4);
  const double* x = &grid_[j0];
  const double* y = &values_[j0];
  auto cubic = [&](double t) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
      double l = 1.0;
      for (int k = 0; k < 4; ++k)
        if (k != i) l *= (t - x[k]) / (x[i] - x[k]);
      s += y[i] * l;
    }
    return s;
  };
  // Two-point Gauss–Legendre is exact for cubics.
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double off = half / std::sqrt(3.0);
  return half * (cubic(mid - off) + cubic(mid + off));
}

double DensityFunction1D::integrate_between(double a, double b) const {
  const double eps = 1e-12 * std::max(1.0, std::abs(upper() - lower()));
  if (a < lower() - eps || b > upper() + eps || a > b)
    throw ValidationError("DensityFunction1D::integrate_between: interval outside grid");
  a = std::clamp(a, lower(), upper());
  b = std::clamp(b, lower(), upper());
  if (a == b) return 0.0;
  // first cell whose right end exceeds a
  std::size_t cell = static_cast<std::size_t>(std::upper_bound(grid_.begin(), grid_.end(), a) - grid_.begin());
  cell = cell == 0 ? 0 : cell - 1;
  double s = 0.0;
  for (; cell + 1 < grid_.size() && grid_[cell] < b; ++cell) {
    const double lo = std::max(a, grid_[cell]);
    const double hi = std::min(b, grid_[cell + 1]);
    if (hi > lo) s += cell_integral(cell, lo, hi);
  }
  return s;
}

std::size_t DensityFunction1D::nodes_in(double a, double b) const {
  const auto lo = std::lower_bound(grid_.begin(), grid_.end(), a);
  const auto hi = std::upper_bound(grid_.begin(), grid_.end(), b);
  return hi > lo ? static_cast<std::size_t>(hi - lo) : 0;
}

double beta_functional(const DensityFunction1D& p, double beta) {
  if (!(beta > 0.0)) throw ValidationError("beta_functional: beta must be > 0");
  const double s = p.integrate([beta](double v) { return v > 0.0 ? std::pow(v, beta) : 0.0; });
  return std::pow(s, 1.0 / beta);
}

ContinuousEntropy continuous_unified_entropy(const DensityFunction1D& p, const UnifiedParams& params) {
  const auto w = p.weights();
  const double r = renyi_core(p.values(), [&](std::size_t i) { return w[i]; }, params.alpha);
  ContinuousEntropy out{};
  out.value = unified_from_renyi(r, params);
  out.norm_condition_holds = r >= 0.0;
  out.density_at_most_one = p.max_value() <= 1.0;
  return out;
}

// ---- partitions and binning ---------------------------------------------------------

PhasePartition::PhasePartition(std::vector<double> edges) : edges_(std::move(edges)) {
  if (edges_.size() < 2) throw ValidationError("PhasePartition: need at least one bin");
  if (std::abs(edges_.front()) > 1e-12 || std::abs(edges_.back() - kTwoPi) > 1e-12)
    throw ValidationError("PhasePartition: edges must run from 0 to 2π");
  edges_.front() = 0.0;
  edges_.back() = kTwoPi;
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (!(edges_[i] > edges_[i - 1])) throw ValidationError("PhasePartition: edges must be strictly increasing");
  if (!(max_width() < kTwoPi)) throw ValidationError("PhasePartition: every bin must be narrower than 2π");
}

PhasePartition PhasePartition::equal(std::size_t bins) {
  if (bins < 2) throw ValidationError("PhasePartition::equal: need at least two bins");
  std::vector<double> e(bins + 1);
  for (std::size_t m = 0; m <= bins; ++m) e[m] = kTwoPi * static_cast<double>(m) / static_cast<double>(bins);
  e.back() = kTwoPi;
  return PhasePartition(std::move(e));
}

double PhasePartition::max_width() const noexcept {
  double w = 0.0;
  for (std::size_t i = 1; i < edges_.size(); ++i) w = std::max(w, edges_[i] - edges_[i - 1]);
  return w;
}

DiscreteDistribution bin_density(const DensityFunction1D& p, const PhasePartition& part) {
  const auto e = part.edges();
  if (p.lower() > 1e-12 || p.upper() < kTwoPi - 1e-12)
    throw ValidationError("bin_density: density grid must cover [0, 2π]");
  std::vector<double> r(part.bins());
  for (std::size_t m = 0; m < part.bins(); ++m) {
    if (p.nodes_in(e[m], e[m + 1]) < kMinNodesPerBin)
      throw ValidationError("bin_density: bin " + std::to_string(m) + " is under-resolved (fewer than " +
                            std::to_string(kMinNodesPerBin) + " grid nodes)");
    r[m] = p.integrate_between(e[m], e[m + 1]);
  }
  const double sum = std::accumulate(r.begin(), r.end(), 0.0);
  const double reference = p.total();
  if (std::abs(sum - reference) > 1e-8)
    throw ValidationError("bin_density: bins sum to " + fmt(sum) + " against total " + fmt(reference) +
                          "; grid too coarse");
  return DiscreteDistribution::normalized(std::move(r), 1e-10, 1e-6);
}

}  // namespace nphase
