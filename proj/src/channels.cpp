#include "nphase/channels.hpp"

#include <cmath>
#include <string>

namespace nphase {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t n) { return static_cast<Index>(n); }

double max_entry(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_input_dim(const KrausSet& a, const DensityOperator& rho, const char* who) {
  if (a.dim_in() != rho.dim())
    throw ValidationError(std::string(who) + ": channel input dimension " + std::to_string(a.dim_in()) +
                          " does not match state dimension " + std::to_string(rho.dim()));
}

}  // namespace

KrausSet::KrausSet(std::vector<ComplexMatrix> operators, const Tolerances& tol) : ops_(std::move(operators)) {
  if (ops_.empty()) throw ValidationError("KrausSet: no operators");
  dim_out_ = static_cast<std::size_t>(ops_.front().rows());
  dim_in_ = static_cast<std::size_t>(ops_.front().cols());
  if (dim_in_ == 0 || dim_out_ == 0) throw ValidationError("KrausSet: empty operator");
  ComplexMatrix sum = ComplexMatrix::Zero(idx(dim_in_), idx(dim_in_));
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const ComplexMatrix& a = ops_[i];
    if (static_cast<std::size_t>(a.rows()) != dim_out_ || static_cast<std::size_t>(a.cols()) != dim_in_)
      throw ValidationError("KrausSet: operator " + std::to_string(i) + " has the wrong shape");
    if (!a.allFinite()) throw ValidationError("KrausSet: operator " + std::to_string(i) + " has a non-finite entry");
    sum += a.adjoint() * a;
  }
  const double err = max_entry(sum - ComplexMatrix::Identity(idx(dim_in_), idx(dim_in_)));
  if (err > tol.completeness)
    throw ValidationError("KrausSet: Σ A†A deviates from the identity by " + std::to_string(err));
}

Povm KrausSet::effects() const {
  std::vector<ComplexMatrix> e;
  e.reserve(ops_.size());
  for (const auto& a : ops_) {
    ComplexMatrix m = a.adjoint() * a;
    e.push_back(0.5 * (m + m.adjoint()));
  }
  return Povm(std::move(e));
}

GramMatrix::GramMatrix(ComplexMatrix matrix) : m_(std::move(matrix)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) throw ValidationError("GramMatrix: must be square and non-empty");
  if (max_entry(m_ - m_.adjoint()) > 1e-9) throw ValidationError("GramMatrix: not Hermitian");
  if (std::abs(m_.trace().real() - 1.0) > 1e-9) throw ValidationError("GramMatrix: trace differs from one");
  if (eigh(m_).values(0) < -1e-9) throw ValidationError("GramMatrix: not positive semidefinite");
}

DiscreteDistribution GramMatrix::diagonal() const {
  std::vector<double> p(size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = m_(idx(i), idx(i)).real();
  return DiscreteDistribution::normalized(std::move(p), 1e-10, 1e-9);
}

DensityOperator apply_channel(const KrausSet& a, const DensityOperator& rho) {
  require_input_dim(a, rho, "apply_channel");
  ComplexMatrix out = ComplexMatrix::Zero(idx(a.dim_out()), idx(a.dim_out()));
  for (const auto& k : a.operators()) out += k * rho.matrix() * k.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityOperator(std::move(out));
}

GramMatrix pi_matrix(const KrausSet& a, const DensityOperator& rho) {
  require_input_dim(a, rho, "pi_matrix");
  const std::size_t k = a.size();
  // tr(A_i† A_j ρ) = ⟨A_i, A_j ρ⟩_hs
  std::vector<ComplexMatrix> a_rho(k);
  for (std::size_t j = 0; j < k; ++j) a_rho[j] = a[j] * rho.matrix();
  ComplexMatrix pi(idx(k), idx(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) pi(idx(i), idx(j)) = hs_inner(a[i], a_rho[j]);
  pi = 0.5 * (pi + pi.adjoint()).eval();
  return GramMatrix(std::move(pi));
}

KrausSet remix_unraveling(const KrausSet& a, const ComplexMatrix& u) {
  const std::size_t k = a.size();
  if (static_cast<std::size_t>(u.rows()) != k || static_cast<std::size_t>(u.cols()) != k)
    throw ValidationError("remix_unraveling: U must be " + std::to_string(k) + " × " + std::to_string(k));
  const double err = max_entry(u.adjoint() * u - ComplexMatrix::Identity(idx(k), idx(k)));
  if (err > 1e-8) throw ValidationError("remix_unraveling: U is not unitary (" + std::to_string(err) + ")");
  std::vector<ComplexMatrix> b(k, ComplexMatrix::Zero(idx(a.dim_out()), idx(a.dim_in())));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) b[i] += a[j] * u(idx(j), idx(i));
  return KrausSet(std::move(b));
}

KrausSet extremal_unraveling(const KrausSet& a, const DensityOperator& rho) {
  const GramMatrix pi = pi_matrix(a, rho);
  Eigensystem es = eigh(pi.matrix());
  for (Index c = 0; c < es.vectors.cols(); ++c) {
    for (Index r = 0; r < es.vectors.rows(); ++r) {
      const cplx v = es.vectors(r, c);
      if (std::abs(v) > 1e-12) {
        es.vectors.col(c) *= std::conj(v) / std::abs(v);
        break;
      }
    }
  }
  return remix_unraveling(a, es.vectors);
}

double unraveling_entropy(const KrausSet& a, const DensityOperator& rho, const UnifiedParams& params) {
  return unified_entropy(pi_matrix(a, rho).diagonal(), params);
}

BoundReport two_channel_bound(const KrausSet& a, const KrausSet& b, const DensityOperator& rho,
                              const ConjugatePair& pair, double s, double t) {
  if (!pair.is_shannon() && !(s * t > 0.0))
    throw ValidationError("two_channel_bound: needs s·t > 0 or the Shannon pair");
  require_input_dim(a, rho, "two_channel_bound");
  require_input_dim(b, rho, "two_channel_bound");
  const double sum = unraveling_entropy(a, rho, {pair.alpha(), s}) + unraveling_entropy(b, rho, {pair.beta(), t});
  const double bound = lemma1_min(g_function(a.effects(), b.effects(), rho), pair, s, t);
  return make_report("two_channel", pair, s, t, sum, bound);
}

// ---- presets ------------------------------------------------------------------

KrausSet identity_channel(std::size_t dim) {
  if (dim == 0) throw ValidationError("identity_channel: dimension must be >= 1");
  return KrausSet({ComplexMatrix::Identity(idx(dim), idx(dim))});
}

KrausSet depolarizing_channel(double p, std::size_t dim) {
  if (dim < 2) throw ValidationError("depolarizing_channel: dimension must be >= 2");
  const double d2 = static_cast<double>(dim * dim);
  const double p_max = d2 / (d2 - 1.0);
  if (!(p >= 0.0) || p > p_max) throw ValidationError("depolarizing_channel: p out of range");
  const double w_id = std::sqrt(std::max(0.0, 1.0 - p + p / d2));
  const double w = std::sqrt(p / d2);
  ComplexMatrix x = ComplexMatrix::Zero(idx(dim), idx(dim));
  ComplexMatrix z = ComplexMatrix::Zero(idx(dim), idx(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    x(idx((k + 1) % dim), idx(k)) = 1.0;
    z(idx(k), idx(k)) = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(dim));
  }
  std::vector<ComplexMatrix> ops;
  ComplexMatrix xa = ComplexMatrix::Identity(idx(dim), idx(dim));
  for (std::size_t a = 0; a < dim; ++a) {
    ComplexMatrix weyl = xa;
    for (std::size_t b = 0; b < dim; ++b) {
      ops.push_back((a == 0 && b == 0 ? w_id : w) * weyl);
      weyl = (weyl * z).eval();
    }
    xa = (x * xa).eval();
  }
  return KrausSet(std::move(ops));
}

namespace {

void require_gamma(double gamma, const char* who) {
  if (!(gamma >= 0.0) || gamma > 1.0) throw ValidationError(std::string(who) + ": gamma must lie in [0, 1]");
}

}  // namespace

KrausSet phase_damping_channel(double gamma) {
  require_gamma(gamma, "phase_damping_channel");
  ComplexMatrix a0 = ComplexMatrix::Zero(2, 2), a1 = ComplexMatrix::Zero(2, 2);
  a0(0, 0) = 1.0;
  a0(1, 1) = std::sqrt(1.0 - gamma);
  a1(1, 1) = std::sqrt(gamma);
  return KrausSet({a0, a1});
}

KrausSet amplitude_damping_channel(double gamma) {
  require_gamma(gamma, "amplitude_damping_channel");
  ComplexMatrix a0 = ComplexMatrix::Zero(2, 2), a1 = ComplexMatrix::Zero(2, 2);
  a0(0, 0) = 1.0;
  a0(1, 1) = std::sqrt(1.0 - gamma);
  a1(0, 1) = std::sqrt(gamma);
  return KrausSet({a0, a1});
}

KrausSet random_kraus_set(Rng& rng, std::size_t dim, std::size_t count) {
  if (dim == 0 || count == 0) throw ValidationError("random_kraus_set: dim and count must be >= 1");
  const ComplexMatrix u = random_unitary(rng, dim * count);
  std::vector<ComplexMatrix> ops;
  ops.reserve(count);
  for (std::size_t j = 0; j < count; ++j) ops.push_back(u.block(idx(j * dim), 0, idx(dim), idx(dim)));
  return KrausSet(std::move(ops));
}

}  // namespace nphase
