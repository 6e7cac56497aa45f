#include "nphase/pegg_barnett.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace nphase {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t n) { return static_cast<Index>(n); }

// c_k = Σ_m ρ_{m,m+k}, k = 0 … D−1.
std::vector<cplx> diagonal_sums(const ComplexMatrix& rho) {
  const Index d = rho.rows();
  std::vector<cplx> c(static_cast<std::size_t>(d), cplx(0.0, 0.0));
  for (Index k = 0; k < d; ++k)
    for (Index m = 0; m + k < d; ++m) c[static_cast<std::size_t>(k)] += rho(m, m + k);
  return c;
}

double density_from_sums(const std::vector<cplx>& c, double theta) {
  const cplx w = std::polar(1.0, theta);
  cplx acc(0.0, 0.0);
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * w + c[k];
  acc *= w;
  return (c[0].real() + 2.0 * acc.real()) / kTwoPi;
}

double require_regime(cplx z, const char* who) {
  const double r = std::abs(z);
  if (!(r >= 3.0)) throw ValidationError(std::string(who) + ": the Gaussian approximation needs |z| >= 3");
  return r;
}

}  // namespace

PhaseBasis phase_basis(std::size_t n, double theta0) {
  if (n < 1) throw ValidationError("phase_basis: N must be >= 1");
  const std::size_t dim = n + 1;
  PhaseBasis b{dim, theta0, {}, {}};
  b.angles.reserve(dim);
  b.states.reserve(dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t m = 0; m < dim; ++m) {
    const double theta = theta0 + kTwoPi * static_cast<double>(m) / static_cast<double>(dim);
    ComplexVector v(idx(dim));
    for (std::size_t k = 0; k < dim; ++k) v(idx(k)) = std::polar(norm, static_cast<double>(k) * theta);
    b.angles.push_back(theta);
    b.states.emplace_back(std::move(v));
  }
  return b;
}

ComplexMatrix phase_operator(std::size_t n, double theta0) {
  const PhaseBasis b = phase_basis(n, theta0);
  ComplexMatrix v(idx(b.dim), idx(b.dim));
  RealVector theta(idx(b.dim));
  for (std::size_t m = 0; m < b.dim; ++m) {
    v.col(idx(m)) = b.states[m].amplitudes();
    theta(idx(m)) = b.angles[m];
  }
  return v * theta.asDiagonal() * v.adjoint();
}

PhaseMoment phase_moment(const DensityOperator& rho, unsigned order, std::size_t n, double theta0) {
  if (rho.dim() > n + 1) throw ValidationError("phase_moment: state dimension exceeds N + 1");
  const PhaseBasis b = phase_basis(n, theta0);
  const ComplexMatrix r = rho.embedded(b.dim).matrix();
  PhaseMoment out{0.0, 0.0};
  for (std::size_t m = 0; m < b.dim; ++m) {
    const ComplexVector& v = b.states[m].amplitudes();
    const double weight = v.dot(r * v).real();
    out.finite_n += std::pow(b.angles[m], static_cast<double>(order)) * weight;
  }

  const std::vector<cplx> c = diagonal_sums(rho.matrix());
  const std::size_t panels = std::max<std::size_t>(32, 2 * rho.dim());
  const double h = kTwoPi / static_cast<double>(panels);
  auto f = [&](double theta) { return std::pow(theta, static_cast<double>(order)) * density_from_sums(c, theta); };
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = theta0 + h * static_cast<double>(p);
    out.integral += boost::math::quadrature::gauss<double, 20>::integrate(f, a, a + h);
  }
  return out;
}

double phase_density_at(const DensityOperator& rho, double theta) {
  return density_from_sums(diagonal_sums(rho.matrix()), theta);
}

DensityFunction1D phase_density(const DensityOperator& rho, std::size_t grid) {
  if (grid <= rho.dim())
    throw ValidationError("phase_density: grid needs more points than the truncation dimension (" +
                          std::to_string(rho.dim()) + ")");
  const std::vector<cplx> c = diagonal_sums(rho.matrix());
  std::vector<double> theta(grid), values(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    theta[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(grid - 1);
    double p = density_from_sums(c, theta[i]);
    if (p < 0.0) {
      if (p < -1e-8)
        throw ValidationError("phase_density: P(θ) = " + std::to_string(p) +
                              " is negative; the truncation is too small");
      p = 0.0;
    }
    values[i] = p;
  }
  theta.back() = kTwoPi;
  return DensityFunction1D(std::move(theta), std::move(values), 1e-8);
}

DiscreteDistribution phase_bins(const DensityOperator& rho, const PhasePartition& part) {
  const std::vector<cplx> c = diagonal_sums(rho.matrix());
  const auto e = part.edges();
  std::vector<double> r(part.bins());
  for (std::size_t m = 0; m < part.bins(); ++m) {
    const double a = e[m], b = e[m + 1];
    cplx acc(0.0, 0.0);
    for (std::size_t k = 1; k < c.size(); ++k) {
      const double kd = static_cast<double>(k);
      acc += c[k] * (std::polar(1.0, kd * b) - std::polar(1.0, kd * a)) / cplx(0.0, kd);
    }
    r[m] = (c[0].real() * (b - a) + 2.0 * acc.real()) / kTwoPi;
  }
  return DiscreteDistribution::normalized(std::move(r), 1e-10, 1e-9);
}

DiscreteDistribution number_distribution(const DensityOperator& rho) {
  const ComplexMatrix& r = rho.matrix();
  std::vector<double> q(rho.dim());
  for (std::size_t n = 0; n < q.size(); ++n) q[n] = r(idx(n), idx(n)).real();
  return DiscreteDistribution::normalized(std::move(q), 1e-10, 1e-9);
}

cplx phase_amplitude(const PureState& psi, double theta) {
  const cplx w = std::polar(1.0, -theta);
  cplx acc(0.0, 0.0);
  for (std::size_t n = psi.dim(); n-- > 0;) acc = acc * w + psi[n];
  return acc / std::sqrt(kTwoPi);
}

DiscreteDistribution finite_phase_distribution(const PureState& psi, std::size_t n, double theta0) {
  if (psi.dim() > n + 1) throw ValidationError("finite_phase_distribution: state dimension exceeds N + 1");
  const PhaseBasis b = phase_basis(n, theta0);
  const ComplexVector x = psi.embedded(b.dim).amplitudes();
  std::vector<double> p(b.dim);
  for (std::size_t m = 0; m < b.dim; ++m) p[m] = std::norm(b.states[m].amplitudes().dot(x));
  return DiscreteDistribution::normalized(std::move(p), 1e-10, 1e-9);
}

// ---- Gaussian approximation -------------------------------------------------

double gaussian_phase_density(cplx z, double theta) {
  const double r2 = std::norm(z);
  const double xi = std::remainder(theta - std::arg(z), kTwoPi);
  return std::sqrt(2.0 * r2 / kPi) * std::exp(-2.0 * r2 * xi * xi);
}

double gaussian_number_density(cplx z, double n) {
  const double r2 = std::norm(z);
  const double d = n - r2;
  return std::exp(-d * d / (2.0 * r2)) / std::sqrt(kTwoPi * r2);
}

GaussianPair gaussian_pair(cplx z, std::size_t grid) {
  const double r = require_regime(z, "gaussian_pair");
  const double mean = r * r;
  return GaussianPair{
      z,
      DensityFunction1D::sample([z](double t) { return gaussian_phase_density(z, t); }, 0.0, kTwoPi, grid),
      DensityFunction1D::sample([z](double n) { return gaussian_number_density(z, n); }, mean - 12.0 * r,
                                mean + 12.0 * r, grid)};
}

double gaussian_fourier_residual(cplx z, std::size_t points) {
  const double r = require_regime(z, "gaussian_fourier_residual");
  if (points < 2) throw ValidationError("gaussian_fourier_residual: need at least two points");
  const double r2 = r * r;
  // √W̃ as a function of κ = n − |z|².
  auto root_w = [r2](double kappa) { return std::sqrt(gaussian_number_density(cplx(std::sqrt(r2), 0.0), kappa + r2)); };
  constexpr std::size_t kSteps = 8000;
  const double half = 40.0 * r;
  const double h = 2.0 * half / static_cast<double>(kSteps);
  std::vector<double> kappa(kSteps + 1), wv(kSteps + 1);
  for (std::size_t i = 0; i <= kSteps; ++i) {
    kappa[i] = -half + h * static_cast<double>(i);
    wv[i] = root_w(kappa[i]);
  }
  const double sigma_theta = 1.0 / (2.0 * r);
  double worst = 0.0;
  for (std::size_t j = 0; j < points; ++j) {
    const double xi = -6.0 * sigma_theta + 12.0 * sigma_theta * static_cast<double>(j) / static_cast<double>(points - 1);
    // √W̃ is even in κ, so only the cosine part survives.
    double acc = 0.0;
    for (std::size_t i = 0; i <= kSteps; ++i) {
      const double wgt = (i == 0 || i == kSteps) ? 0.5 : 1.0;
      acc += wgt * std::cos(xi * kappa[i]) * wv[i];
    }
    const double transform = acc * h / std::sqrt(kTwoPi);
    const double target = std::sqrt(std::sqrt(2.0 * r2 / kPi) * std::exp(-2.0 * r2 * xi * xi));
    worst = std::max(worst, std::abs(transform - target));
  }
  return worst;
}

MultiphotonBinned multiphoton_binned(cplx z, const PhasePartition& part, std::size_t grid) {
  const double r = require_regime(z, "multiphoton_binned");
  const double mean = r * r;
  const DensityFunction1D phase =
      DensityFunction1D::sample([z](double t) { return gaussian_phase_density(z, t); }, 0.0, kTwoPi, grid);
  const long lo = static_cast<long>(std::floor(mean - 10.0 * r));
  const long hi = static_cast<long>(std::ceil(mean + 10.0 * r));
  const double scale = 1.0 / (std::sqrt(2.0) * r);
  std::vector<double> q;
  q.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long n = lo; n <= hi; ++n) {
    const double a = (static_cast<double>(n) - mean) * scale;
    const double b = (static_cast<double>(n + 1) - mean) * scale;
    q.push_back(0.5 * (std::erf(b) - std::erf(a)));
  }
  return MultiphotonBinned{z, bin_density(phase, part), DiscreteDistribution::normalized(std::move(q), 1e-10, 1e-8),
                           lo, part.max_width()};
}

BoundReport multiphoton_check(const MultiphotonBinned& binned, const ConjugatePair& pair, double s, double t) {
  const double sum = unified_entropy(binned.phase, {pair.alpha(), s}) + unified_entropy(binned.number, {pair.beta(), t});
  return make_report("multiphoton", pair, s, t, sum, multiphoton_bound(binned.max_bin_width, pair, s, t));
}

// ---- number-phase relations -------------------------------------------------

NumberPhaseScenario::NumberPhaseScenario(DensityOperator state_, PhasePartition partition_, std::size_t grid_,
                                         double tail_mass_)
    : state(std::move(state_)), partition(std::move(partition_)), grid(grid_), tail_mass(tail_mass_) {
  if (!(tail_mass >= 0.0) || !(tail_mass < 1e-12))
    throw ValidationError("NumberPhaseScenario: truncation tail mass must be below 1e-12");
  if (grid < 2) throw ValidationError("NumberPhaseScenario: grid must have at least two points");
}

BoundReport theorem2_check(const NumberPhaseScenario& scn, const ConjugatePair& pair, double s, double t) {
  const DiscreteDistribution r = phase_bins(scn.state, scn.partition);
  const DiscreteDistribution q = number_distribution(scn.state);
  const double sum = unified_entropy(r, {pair.alpha(), s}) + unified_entropy(q, {pair.beta(), t});
  return make_report("theorem2", pair, s, t, sum, angle_bound(scn.partition.max_width(), pair, s, t));
}

BoundReport continuous_renyi_check(const DensityOperator& rho, const ConjugatePair& pair, std::size_t grid) {
  const DensityFunction1D p = phase_density(rho, grid);
  const DiscreteDistribution q = number_distribution(rho);
  const double sum =
      continuous_unified_entropy(p, {pair.alpha(), 0.0}).value + unified_entropy(q, {pair.beta(), 0.0});
  return make_report("theorem3_renyi", pair, 0.0, 0.0, sum, std::log(kTwoPi));
}

std::optional<BoundReport> continuous_unified_check(const DensityOperator& rho, const ConjugatePair& pair, double s,
                                                    double t, std::size_t grid) {
  const DensityFunction1D p = phase_density(rho, grid);
  if (p.max_value() > 1.0) return std::nullopt;
  const DiscreteDistribution q = number_distribution(rho);
  const double sum = continuous_unified_entropy(p, {pair.alpha(), s}).value + unified_entropy(q, {pair.beta(), t});
  const double bound = scaled_alpha_log(std::log(kTwoPi), select_mu_nu(pair, s, t));
  return make_report("theorem3_unified", pair, s, t, sum, bound);
}

double total_variation(const DensityFunction1D& p, const DensityFunction1D& q) {
  if (p.size() != q.size()) throw ValidationError("total_variation: grids differ in size");
  const auto gp = p.grid(), gq = q.grid();
  for (std::size_t i = 0; i < gp.size(); ++i)
    if (std::abs(gp[i] - gq[i]) > 1e-12) throw ValidationError("total_variation: grids differ");
  const auto w = p.weights();
  const auto vp = p.values(), vq = q.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < vp.size(); ++i) acc += w[i] * std::abs(vp[i] - vq[i]);
  return 0.5 * acc;
}

}  // namespace nphase
