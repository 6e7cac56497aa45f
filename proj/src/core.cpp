#include "nphase/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace nphase {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t n) { return static_cast<Index>(n); }

double max_entry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

void require_finite(const ComplexMatrix& m, const char* who) {
  if (!m.allFinite()) throw ValidationError(std::string(who) + ": non-finite entry");
}

}  // namespace

// ---- DiscreteDistribution -------------------------------------------------

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs, double sum_tolerance)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw ValidationError("DiscreteDistribution: empty");
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0)
      throw ValidationError("DiscreteDistribution: entry " + fmt(p) + " is negative or non-finite");
  }
  const double sum = total();
  if (std::abs(sum - 1.0) > sum_tolerance)
    throw ValidationError("DiscreteDistribution: entries sum to " + fmt(sum));
}

DiscreteDistribution DiscreteDistribution::normalized(std::vector<double> raw, double clamp,
                                                      double max_drift) {
  for (double& p : raw) {
    if (!std::isfinite(p)) throw ValidationError("DiscreteDistribution: non-finite probability");
    if (p < 0.0) {
      if (p < -clamp)
        throw ValidationError("DiscreteDistribution: probability " + fmt(p) + " below clamp window");
      p = 0.0;
    }
  }
  const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (std::abs(sum - 1.0) > max_drift)
    throw ValidationError("DiscreteDistribution: probabilities sum to " + fmt(sum) +
                          ", drift exceeds " + fmt(max_drift));
  for (double& p : raw) p /= sum;
  return DiscreteDistribution(std::move(raw));
}

DiscreteDistribution DiscreteDistribution::uniform(std::size_t n) {
  if (n == 0) throw ValidationError("DiscreteDistribution::uniform: n must be > 0");
  return DiscreteDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteDistribution DiscreteDistribution::deterministic(std::size_t n, std::size_t index) {
  if (index >= n) throw ValidationError("DiscreteDistribution::deterministic: index out of range");
  std::vector<double> p(n, 0.0);
  p[index] = 1.0;
  return DiscreteDistribution(std::move(p));
}

double DiscreteDistribution::total() const noexcept {
  return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

// ---- PureState / DensityOperator / Povm -----------------------------------

PureState::PureState(ComplexVector amplitudes, const Tolerances& tol) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw ValidationError("PureState: empty amplitude vector");
  if (!amps_.allFinite()) throw ValidationError("PureState: non-finite amplitude");
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > tol.state_norm)
    throw ValidationError("PureState: norm " + fmt(norm) + " is not 1");
}

PureState PureState::embedded(std::size_t new_dim) const {
  if (new_dim < dim()) throw ValidationError("PureState::embedded: target dimension too small");
  ComplexVector out = ComplexVector::Zero(idx(new_dim));
  out.head(amps_.size()) = amps_;
  return PureState(std::move(out));
}

DensityOperator::DensityOperator(ComplexMatrix matrix, const Tolerances& tol) : rho_(std::move(matrix)) {
  if (rho_.rows() == 0 || rho_.rows() != rho_.cols())
    throw ValidationError("DensityOperator: matrix must be square and non-empty");
  require_finite(rho_, "DensityOperator");
  const double herm = max_entry(rho_ - rho_.adjoint());
  if (herm > tol.hermitian) throw ValidationError("DensityOperator: not Hermitian (" + fmt(herm) + ")");
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) throw ValidationError("DensityOperator: trace " + fmt(tr));
  const ComplexMatrix sym = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
  const double min_ev = es.eigenvalues().minCoeff();
  if (min_ev < -tol.psd)
    throw ValidationError("DensityOperator: negative eigenvalue " + fmt(min_ev));
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  const ComplexVector& v = psi.amplitudes();
  return DensityOperator(v * v.adjoint());
}

DensityOperator DensityOperator::embedded(std::size_t new_dim) const {
  if (new_dim < dim()) throw ValidationError("DensityOperator::embedded: target dimension too small");
  ComplexMatrix out = ComplexMatrix::Zero(idx(new_dim), idx(new_dim));
  out.topLeftCorner(rho_.rows(), rho_.cols()) = rho_;
  return DensityOperator(std::move(out));
}

Povm::Povm(std::vector<ComplexMatrix> effects, const Tolerances& tol) : effects_(std::move(effects)) {
  if (effects_.empty()) throw ValidationError("Povm: no effects");
  dim_ = static_cast<std::size_t>(effects_.front().rows());
  if (dim_ == 0) throw ValidationError("Povm: zero-dimensional effect");
  ComplexMatrix sum = ComplexMatrix::Zero(idx(dim_), idx(dim_));
  for (std::size_t i = 0; i < effects_.size(); ++i) {
    const ComplexMatrix& e = effects_[i];
    if (static_cast<std::size_t>(e.rows()) != dim_ || static_cast<std::size_t>(e.cols()) != dim_)
      throw ValidationError("Povm: effect " + std::to_string(i) + " has mismatched shape");
    require_finite(e, "Povm");
    if (max_entry(e - e.adjoint()) > tol.hermitian)
      throw ValidationError("Povm: effect " + std::to_string(i) + " is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (e + e.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol.psd)
      throw ValidationError("Povm: effect " + std::to_string(i) + " is not positive semidefinite");
    sum += e;
  }
  const double dev = max_entry(sum - ComplexMatrix::Identity(idx(dim_), idx(dim_)));
  if (dev > tol.completeness) throw ValidationError("Povm: effects do not sum to identity (" + fmt(dev) + ")");
}

// ---- linear algebra -------------------------------------------------------

Eigensystem eigh(const ComplexMatrix& h, double hermitian_tol) {
  if (h.rows() == 0 || h.rows() != h.cols()) throw ValidationError("eigh: matrix must be square and non-empty");
  require_finite(h, "eigh");
  const double herm = max_entry(h - h.adjoint());
  if (herm > hermitian_tol) throw ValidationError("eigh: matrix is not Hermitian (" + fmt(herm) + ")");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success) throw ValidationError("eigh: decomposition failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  const Eigensystem es = eigh(a);
  RealVector root(es.values.size());
  for (Index i = 0; i < es.values.size(); ++i) {
    const double lam = es.values(i);
    if (lam < -1e-10) throw ValidationError("psd_sqrt: matrix is not positive semidefinite");
    root(i) = std::sqrt(std::max(lam, 0.0));
  }
  return es.vectors * root.asDiagonal() * es.vectors.adjoint();
}

cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("hs_inner: shape mismatch");
  return (a.adjoint() * b).trace();
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

DiscreteDistribution measure_probabilities(const Povm& m, const DensityOperator& rho, const Tolerances& tol) {
  if (m.dim() != rho.dim()) throw ValidationError("measure_probabilities: dimension mismatch");
  std::vector<double> p(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    // tr(M ρ) = Σ_jk M_jk ρ_kj
    p[i] = m[i].cwiseProduct(rho.matrix().transpose()).sum().real();
  }
  return DiscreteDistribution::normalized(std::move(p), tol.probability_clamp, tol.probability_drift);
}

// ---- states ---------------------------------------------------------------

PureState fock_state(std::size_t n, std::size_t dim) {
  if (n >= dim) throw ValidationError("fock_state: n must be below dim");
  ComplexVector v = ComplexVector::Zero(idx(dim));
  v(idx(n)) = 1.0;
  return PureState(std::move(v));
}

std::size_t coherent_default_dim(cplx z) {
  const double r = std::abs(z);
  return static_cast<std::size_t>(std::ceil(r * r + 12.0 * r + 20.0));
}

double poisson_tail_mass(double lambda, std::size_t dim) {
  if (lambda < 0.0) throw ValidationError("poisson_tail_mass: negative mean");
  if (lambda == 0.0) return dim == 0 ? 1.0 : 0.0;
  // Below the mode the tail is most of the mass; compute it as 1 − head.
  const double log_lambda = std::log(lambda);
  auto log_pmf = [&](double n) { return -lambda + n * log_lambda - std::lgamma(n + 1.0); };
  if (static_cast<double>(dim) <= lambda) {
    double head = 0.0;
    for (std::size_t n = 0; n < dim; ++n) head += std::exp(log_pmf(static_cast<double>(n)));
    return std::max(0.0, 1.0 - head);
  }
  double tail = 0.0;
  for (std::size_t n = dim;; ++n) {
    const double term = std::exp(log_pmf(static_cast<double>(n)));
    tail += term;
    if (term <= 1e-18 * tail || term < 1e-300) break;
  }
  return tail;
}

PureState coherent_state(cplx z, std::size_t dim, const Tolerances& tol) {
  if (dim == 0) throw ValidationError("coherent_state: dim must be > 0");
  const double r = std::abs(z);
  const double tail = poisson_tail_mass(r * r, dim);
  if (tail > tol.truncation_tail)
    throw ValidationError("coherent_state: dim " + std::to_string(dim) + " drops tail mass " + fmt(tail));
  ComplexVector v = ComplexVector::Zero(idx(dim));
  if (r == 0.0) {
    v(0) = 1.0;
    return PureState(std::move(v));
  }
  const double phase = std::arg(z);
  const double log_r = std::log(r);
  for (std::size_t n = 0; n < dim; ++n) {
    const double nd = static_cast<double>(n);
    const double log_mag = -0.5 * r * r + nd * log_r - 0.5 * std::lgamma(nd + 1.0);
    v(idx(n)) = std::polar(std::exp(log_mag), nd * phase);
  }
  v /= v.norm();
  return PureState(std::move(v), tol);
}

PureState coherent_state(cplx z) { return coherent_state(z, coherent_default_dim(z)); }

std::size_t thermal_default_dim(double nbar) {
  if (nbar < 0.0) throw ValidationError("thermal_default_dim: nbar must be >= 0");
  if (nbar == 0.0) return 1;
  const double x = nbar / (1.0 + nbar);
  return static_cast<std::size_t>(std::ceil(std::log(1e-13) / std::log(x)));
}

DensityOperator thermal_state(double nbar, std::size_t dim, const Tolerances& tol) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw ValidationError("thermal_state: nbar must be finite and >= 0");
  if (dim == 0) throw ValidationError("thermal_state: dim must be > 0");
  const double x = nbar / (1.0 + nbar);
  const double tail = std::pow(x, static_cast<double>(dim));
  if (tail > tol.truncation_tail)
    throw ValidationError("thermal_state: dim " + std::to_string(dim) + " drops tail mass " + fmt(tail));
  RealVector w(idx(dim));
  double wn = 1.0;
  for (std::size_t n = 0; n < dim; ++n) {
    w(idx(n)) = wn;
    wn *= x;
  }
  w /= w.sum();
  ComplexMatrix rho = w.cast<cplx>().asDiagonal();
  return DensityOperator(std::move(rho), tol);
}

DensityOperator thermal_state(double nbar) { return thermal_state(nbar, thermal_default_dim(nbar)); }

// ---- bases ------------------------------------------------------------------

std::vector<PureState> number_basis(std::size_t dim) {
  std::vector<PureState> out;
  out.reserve(dim);
  for (std::size_t n = 0; n < dim; ++n) out.push_back(fock_state(n, dim));
  return out;
}

std::vector<PureState> fourier_basis(std::size_t dim) {
  if (dim == 0) throw ValidationError("fourier_basis: dim must be > 0");
  std::vector<PureState> out;
  out.reserve(dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    ComplexVector v(idx(dim));
    for (std::size_t l = 0; l < dim; ++l) {
      // reduce k·l mod dim first so large dims keep full phase accuracy
      const double frac = static_cast<double>((k * l) % dim) / static_cast<double>(dim);
      v(idx(l)) = std::polar(scale, kTwoPi * frac);
    }
    out.emplace_back(std::move(v));
  }
  return out;
}

Povm basis_povm(const std::vector<PureState>& vectors, const Tolerances& tol) {
  if (vectors.empty()) throw ValidationError("basis_povm: no vectors");
  const std::size_t dim = vectors.front().dim();
  for (const auto& v : vectors)
    if (v.dim() != dim) throw ValidationError("basis_povm: vectors have different dimensions");
  ComplexMatrix basis(idx(dim), idx(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) basis.col(idx(i)) = vectors[i].amplitudes();
  const ComplexMatrix gram = basis.adjoint() * basis;
  const double dev = max_entry(gram - ComplexMatrix::Identity(gram.rows(), gram.cols()));
  if (dev > tol.orthonormal) throw ValidationError("basis_povm: vectors are not orthonormal (" + fmt(dev) + ")");
  std::vector<ComplexMatrix> effects;
  effects.reserve(vectors.size());
  for (const auto& v : vectors) effects.push_back(v.amplitudes() * v.amplitudes().adjoint());
  return Povm(std::move(effects), tol);
}

}  // namespace nphase
