#include "nphase/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nphase {

namespace {

// (x^s − 1)/s, with ln x at s = 0.
double power_ratio(double x, double s) {
  const double lx = std::log(x);
  if (std::isinf(lx)) {
    if (s > 0.0) return -1.0 / s;
    return -std::numeric_limits<double>::infinity();
  }
  return lx * expm1_ratio(s * lx);
}

}  // namespace

MuNu select_mu_nu(const ConjugatePair& pair, double s, double t) {
  if (pair.is_shannon()) return {1.0, 0.0};
  if (s == 0.0 && t == 0.0) return {pair.larger(), 0.0};
  if (!(s * t > 0.0))
    throw ValidationError("select_mu_nu: need s*t > 0 or s = t = 0 (got s = " + std::to_string(s) +
                          ", t = " + std::to_string(t) + ")");
  const double mu = s > 0.0 ? pair.larger() : pair.smaller();
  const double nu = (mu == pair.alpha()) ? s : t;
  return {mu, nu};
}

double scaled_alpha_log(double log_x, const MuNu& mn) {
  return log_x * expm1_ratio((1.0 - mn.mu) * mn.nu * log_x);
}

double lemma1_min(double g, const ConjugatePair& pair, double s, double t) {
  if (!(g > 0.0) || g > 1.0 + 1e-9) throw ValidationError("lemma1_min: g must lie in (0, 1]");
  g = std::min(g, 1.0);
  return scaled_alpha_log(-2.0 * std::log(g), select_mu_nu(pair, s, t));
}

HMinimum brute_force_h_min(double g, const ConjugatePair& pair, double s, double t, std::size_t grid) {
  if (!(g > 0.0) || g > 1.0) throw ValidationError("brute_force_h_min: g must lie in (0, 1]");
  if (pair.is_shannon()) throw ValidationError("brute_force_h_min: h is undefined for the Shannon pair");
  if (grid < 512) throw ValidationError("brute_force_h_min: grid must be >= 512");
  select_mu_nu(pair, s, t);  // parameter-region check

  double alpha = pair.alpha(), beta = pair.beta();
  if (alpha < 1.0) {
    std::swap(alpha, beta);
    std::swap(s, t);
  }
  auto h = [&](double xi, double zeta) {
    return power_ratio(xi, s) / (1.0 - alpha) + power_ratio(zeta, t) / (1.0 - beta);
  };
  const double c = std::pow(g, -2.0 * (1.0 - beta));
  const double xi0 = std::pow(c, -alpha / beta);

  HMinimum best{std::numeric_limits<double>::infinity(), 1.0, 1.0};
  auto visit = [&](double xi, double zeta) {
    const double v = h(xi, zeta);
    if (v < best.value) best = {v, xi, zeta};
  };

  const std::size_t n = grid / 3 + 1;
  const double nd = static_cast<double>(n);
  // ζ = 1, 0 ≤ ξ ≤ ξ0
  for (std::size_t k = 0; k <= n; ++k) visit(xi0 * static_cast<double>(k) / nd, 1.0);
  // constraint curve ζ = c ξ^{β/α}, ξ0 ≤ ξ ≤ 1, log-uniform in ξ
  for (std::size_t k = 0; k <= n; ++k) {
    const double xi = std::pow(xi0, 1.0 - static_cast<double>(k) / nd);
    visit(xi, std::max(1.0, c * std::pow(xi, beta / alpha)));
  }
  // ξ = 1, c ≤ ζ ≤ 2c
  for (std::size_t k = 0; k <= n; ++k) visit(1.0, c * (1.0 + static_cast<double>(k) / nd));
  // coarse interior scan of the feasible box [ξ0, 1] × [1, c]
  constexpr int kInterior = 64;
  for (int i = 0; i <= kInterior; ++i) {
    const double xi = xi0 + (1.0 - xi0) * i / kInterior;
    const double floor_zeta = std::max(1.0, c * std::pow(xi, beta / alpha));
    for (int j = 0; j <= kInterior; ++j) {
      const double zeta = 1.0 + (c - 1.0) * j / kInterior;
      if (zeta >= floor_zeta) visit(xi, zeta);
    }
  }
  return best;
}

double g_function(const Povm& m, const Povm& n, const DensityOperator& rho, double zero_cutoff) {
  if (m.dim() != rho.dim() || n.dim() != rho.dim()) throw ValidationError("g_function: dimension mismatch");
  const ComplexMatrix& r = rho.matrix();
  std::vector<double> p(m.size()), q(n.size());
  for (std::size_t i = 0; i < m.size(); ++i) p[i] = m[i].cwiseProduct(r.transpose()).sum().real();
  // (N_j ρ)^T, reused for every i: tr(M_i N_j ρ) = Σ (M_i ∘ (N_j ρ)^T)
  std::vector<ComplexMatrix> nr_t(n.size());
  for (std::size_t j = 0; j < n.size(); ++j) {
    nr_t[j] = (n[j] * r).transpose();
    q[j] = nr_t[j].trace().real();
  }
  double best = -1.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (p[i] < zero_cutoff) continue;
    for (std::size_t j = 0; j < n.size(); ++j) {
      if (q[j] < zero_cutoff) continue;
      const double overlap = std::abs(m[i].cwiseProduct(nr_t[j]).sum());
      best = std::max(best, overlap / std::sqrt(p[i] * q[j]));
    }
  }
  if (best < 0.0) throw ValidationError("g_function: every outcome pair has zero probability");
  return best;
}

double f_bar(const Povm& m, const Povm& n) {
  if (m.dim() != n.dim()) throw ValidationError("f_bar: dimension mismatch");
  std::vector<ComplexMatrix> root_m, root_n;
  for (const auto& e : m.effects()) root_m.push_back(psd_sqrt(e));
  for (const auto& e : n.effects()) root_n.push_back(psd_sqrt(e));
  double best = 0.0;
  for (const auto& a : root_m)
    for (const auto& b : root_n) best = std::max(best, spectral_norm(a * b));
  return best;
}

BoundReport make_report(std::string scenario, const ConjugatePair& pair, double s, double t, double entropy_sum,
                        double bound) {
  BoundReport r;
  r.scenario = std::move(scenario);
  r.alpha = pair.alpha();
  r.beta = pair.beta();
  r.s = s;
  r.t = t;
  r.entropy_sum = entropy_sum;
  r.bound = bound;
  r.slack = entropy_sum - bound;
  return r;
}

namespace {

double two_measurement_entropy_sum(const Povm& m, const Povm& n, const DensityOperator& rho,
                                   const ConjugatePair& pair, double s, double t) {
  const DiscreteDistribution p = measure_probabilities(m, rho);
  const DiscreteDistribution q = measure_probabilities(n, rho);
  return unified_entropy(p, {pair.alpha(), s}) + unified_entropy(q, {pair.beta(), t});
}

}  // namespace

BoundReport theorem1_bound(const Povm& m, const Povm& n, const DensityOperator& rho, const ConjugatePair& pair,
                           double s, double t) {
  const double bound = lemma1_min(g_function(m, n, rho), pair, s, t);
  return make_report("theorem1", pair, s, t, two_measurement_entropy_sum(m, n, rho, pair, s, t), bound);
}

BoundReport theorem1_bound_state_independent(const Povm& m, const Povm& n, const DensityOperator& rho,
                                             const ConjugatePair& pair, double s, double t,
                                             std::optional<double> overlap) {
  const double f = overlap ? *overlap : f_bar(m, n);
  const double bound = lemma1_min(f, pair, s, t);
  return make_report("theorem1_state_independent", pair, s, t, two_measurement_entropy_sum(m, n, rho, pair, s, t),
                     bound);
}

double mub_bound(std::size_t dim, const ConjugatePair& pair, double s, double t) {
  if (dim == 0) throw ValidationError("mub_bound: dimension must be >= 1");
  return scaled_alpha_log(std::log(static_cast<double>(dim)), select_mu_nu(pair, s, t));
}

double angle_bound(double delta_phi, const ConjugatePair& pair, double s, double t) {
  if (!(delta_phi > 0.0) || !(delta_phi < kTwoPi)) throw ValidationError("angle_bound: need 0 < Δφ < 2π");
  return scaled_alpha_log(std::log(kTwoPi / delta_phi), select_mu_nu(pair, s, t));
}

namespace {

// ln x / (x − 1), equal to 1 at x = 1.
double log_ratio(double x) {
  const double d = x - 1.0;
  if (std::abs(d) < 1e-12) return 1.0 - 0.5 * d;
  return std::log1p(d) / d;
}

}  // namespace

double multiphoton_kappa(double beta) {
  if (!(beta >= 0.5) || !std::isfinite(beta)) throw ValidationError("multiphoton_kappa: beta must be >= 1/2");
  if (beta == 0.5) return 2.0;
  if (beta == 1.0) return std::exp(1.0);
  const double alpha = beta / (2.0 * beta - 1.0);
  return std::exp(0.5 * (log_ratio(alpha) + log_ratio(beta)));
}

double multiphoton_kappa(const ConjugatePair& pair) {
  if (pair.is_shannon()) return std::exp(1.0);
  return std::exp(0.5 * (log_ratio(pair.alpha()) + log_ratio(pair.beta())));
}

double multiphoton_bound(double delta_theta, const ConjugatePair& pair, double s, double t) {
  if (!(delta_theta > 0.0)) throw ValidationError("multiphoton_bound: bin width must be > 0");
  const double kappa = multiphoton_kappa(pair);
  return scaled_alpha_log(std::log(kappa * kPi / delta_theta), select_mu_nu(pair, s, t));
}

double norm_functional(const NormSource& src, double order) {
  return std::visit([order](const auto& d) { return beta_functional(d, order); }, src);
}

NormSlack verify_norm_inequality(const NormSource& p, const NormSource& q, double factor, const ConjugatePair& pair) {
  if (!(factor > 0.0)) throw ValidationError("verify_norm_inequality: factor must be > 0");
  const double big = pair.larger();
  const double small = pair.smaller();
  const double k = std::pow(factor, 2.0 * (1.0 - small) / small);
  NormSlack out{};
  out.forward = k * norm_functional(q, small) - norm_functional(p, big);
  out.backward = k * norm_functional(p, small) - norm_functional(q, big);
  return out;
}

}  // namespace nphase
