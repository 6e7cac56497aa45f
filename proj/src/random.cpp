#include "nphase/random.hpp"

#include <cmath>

namespace nphase {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  std::uint64_t x = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

ComplexMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

PureState random_pure_state(Rng& rng, std::size_t dim) {
  ComplexVector v = random_ginibre(rng, dim, 1).col(0);
  v /= v.norm();
  return PureState(std::move(v));
}

DensityOperator random_mixed_state(Rng& rng, std::size_t dim, std::size_t rank) {
  const ComplexMatrix g = random_ginibre(rng, dim, rank);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(std::move(rho));
}

DensityOperator random_mixed_state(Rng& rng, std::size_t dim) { return random_mixed_state(rng, dim, dim); }

ComplexMatrix random_unitary(Rng& rng, std::size_t dim) {
  const ComplexMatrix g = random_ginibre(rng, dim, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Multiply column j by phase(r_jj) so the distribution is Haar.
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const cplx d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t dim) {
  const ComplexMatrix g = random_ginibre(rng, dim, dim);
  return 0.5 * (g + g.adjoint());
}

Povm random_projective_povm(Rng& rng, std::size_t dim) {
  const ComplexMatrix u = random_unitary(rng, dim);
  std::vector<PureState> basis;
  basis.reserve(dim);
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    ComplexVector c = u.col(j);
    c /= c.norm();
    basis.emplace_back(std::move(c));
  }
  return basis_povm(basis);
}

}  // namespace nphase
