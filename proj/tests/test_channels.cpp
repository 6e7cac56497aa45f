#include "nphase/channels.hpp"
#include "nphase/random.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace nphase;
using nphase::test::max_abs_diff;
using nphase::test::mat2;

namespace {

ComplexMatrix pi_oracle(const KrausSet& a, const DensityOperator& rho) {
  const auto k = static_cast<Eigen::Index>(a.size());
  ComplexMatrix out = ComplexMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      const ComplexMatrix prod = a[i].adjoint() * a[j] * rho.matrix();
      out(i, j) = prod.trace();
    }
  return out;
}

ComplexMatrix qubit_unitary(double a, double b) {
  return mat2(std::cos(a), -std::exp(cplx(0.0, -b)) * std::sin(a), std::exp(cplx(0.0, b)) * std::sin(a), std::cos(a));
}

}  // namespace

TEST(KrausSet, Validation) {
  EXPECT_THROW(KrausSet({}), ValidationError);
  EXPECT_THROW(KrausSet({ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)}), ValidationError);
  EXPECT_THROW(KrausSet({ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(3, 3)}), ValidationError);
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 0) = cplx(std::nan(""), 0.0);
  EXPECT_THROW(KrausSet({bad}), ValidationError);
  const KrausSet id = identity_channel(3);
  EXPECT_EQ(id.size(), 1u);
  EXPECT_EQ(id.dim_in(), 3u);
  EXPECT_EQ(id.effects().size(), 1u);
}

TEST(Channels, IdentityAndFullDepolarizing) {
  Rng rng(3);
  const DensityOperator rho = random_mixed_state(rng, 3);
  EXPECT_LT(max_abs_diff(apply_channel(identity_channel(3), rho).matrix(), rho.matrix()), 1e-14);
  for (std::size_t d : {2u, 3u, 4u}) {
    const DensityOperator r = random_mixed_state(rng, d);
    const DensityOperator out = apply_channel(depolarizing_channel(1.0, d), r);
    const auto n = static_cast<Eigen::Index>(d);
    EXPECT_LT(max_abs_diff(out.matrix(), ComplexMatrix::Identity(n, n) / static_cast<double>(d)), 1e-12);
    const DensityOperator half = apply_channel(depolarizing_channel(0.4, d), r);
    EXPECT_LT(max_abs_diff(half.matrix(), 0.6 * r.matrix() + 0.4 * ComplexMatrix::Identity(n, n) / static_cast<double>(d)),
              1e-12);
  }
  EXPECT_THROW(depolarizing_channel(1.5, 2), ValidationError);
  EXPECT_NO_THROW(depolarizing_channel(4.0 / 3.0, 2));
  EXPECT_THROW(depolarizing_channel(0.5, 1), ValidationError);
}

TEST(PiMatrix, MatchesLoopOracle) {
  Rng rng(8);
  for (int c = 0; c < 50; ++c) {
    const std::size_t d = 2 + static_cast<std::size_t>(c % 3);
    const KrausSet a = random_kraus_set(rng, d, 2 + static_cast<std::size_t>(c % 3));
    const DensityOperator rho = random_mixed_state(rng, d);
    const GramMatrix pi = pi_matrix(a, rho);
    EXPECT_LT(max_abs_diff(pi.matrix(), pi_oracle(a, rho)), 1e-12);
    EXPECT_NEAR(pi.diagonal().total(), 1.0, 1e-12);
  }
  // A_i†A_j = 0 for i ≠ j gives a diagonal Π even for a coherent input.
  const KrausSet dephase({nphase::test::mat2(1.0, 0.0, 0.0, 0.0), nphase::test::mat2(0.0, 0.0, 0.0, 1.0)});
  const DensityOperator plus = DensityOperator::from_pure(fourier_basis(2)[0]);
  const ComplexMatrix pi = pi_matrix(dephase, plus).matrix();
  EXPECT_NEAR(std::abs(pi(0, 1)), 0.0, 1e-15);
}

TEST(GramMatrix, Validation) {
  EXPECT_THROW(GramMatrix(mat2(1.0, 0.5, 0.0, 0.0)), ValidationError);
  EXPECT_THROW(GramMatrix(mat2(1.5, 0.0, 0.0, -0.5)), ValidationError);
  EXPECT_THROW(GramMatrix(mat2(0.5, 0.0, 0.0, 0.6)), ValidationError);
  EXPECT_NO_THROW(GramMatrix(mat2(0.5, 0.5, 0.5, 0.5)));
}

TEST(Remix, ChannelInvariantAndPiTransforms) {
  Rng rng(17);
  const KrausSet a = random_kraus_set(rng, 3, 3);
  const DensityOperator rho = random_mixed_state(rng, 3);
  const DensityOperator out = apply_channel(a, rho);
  const ComplexMatrix pi = pi_matrix(a, rho).matrix();
  for (int c = 0; c < 100; ++c) {
    const ComplexMatrix u = random_unitary(rng, 3);
    const KrausSet b = remix_unraveling(a, u);
    EXPECT_LT(max_abs_diff(apply_channel(b, rho).matrix(), out.matrix()), 1e-10);
    EXPECT_LT(max_abs_diff(pi_matrix(b, rho).matrix(), u.adjoint() * pi * u), 1e-10);
  }
  ComplexMatrix nu = random_unitary(rng, 3);
  nu(0, 0) += 0.01;
  EXPECT_THROW(remix_unraveling(a, nu), ValidationError);
  EXPECT_THROW(remix_unraveling(a, random_unitary(rng, 2)), ValidationError);
}

TEST(Extremal, DiagonalPiAndMinimalEntropy) {
  Rng rng(23);
  for (int c = 0; c < 30; ++c) {
    const std::size_t d = 2 + static_cast<std::size_t>(c % 3);
    const std::size_t k = 2 + static_cast<std::size_t>((c / 3) % 3);
    const KrausSet a = random_kraus_set(rng, d, k);
    const DensityOperator rho = random_mixed_state(rng, d);
    const KrausSet ex = extremal_unraveling(a, rho);
    const ComplexMatrix pi = pi_matrix(ex, rho).matrix();
    EXPECT_LT(max_abs_diff(pi, ComplexMatrix(pi.diagonal().asDiagonal())), 1e-10);
    for (const UnifiedParams params : {UnifiedParams(1.0, 0.0), UnifiedParams(0.7, 0.0), UnifiedParams(2.0, 1.0),
                                       UnifiedParams(0.5, -1.0), UnifiedParams(3.0, 0.5)}) {
      const double e = unraveling_entropy(ex, rho, params);
      for (int r = 0; r < 50; ++r) {
        const KrausSet b = remix_unraveling(a, random_unitary(rng, k));
        EXPECT_LE(e, unraveling_entropy(b, rho, params) + 1e-10);
      }
    }
  }
}

TEST(Extremal, ProbabilitiesAreChoiEigenvaluesAtMaximallyMixed) {
  // For ρ = I/d, Π = (1/d) tr(A_i†A_j), whose spectrum is that of the
  // normalized Choi matrix.
  Rng rng(41);
  for (int c = 0; c < 10; ++c) {
    const std::size_t d = 2 + static_cast<std::size_t>(c % 2);
    const std::size_t k = 4;
    const KrausSet a = random_kraus_set(rng, d, k);
    const auto n = static_cast<Eigen::Index>(d);
    const DensityOperator mixed(ComplexMatrix::Identity(n, n) / static_cast<double>(d));
    ComplexMatrix choi = ComplexMatrix::Zero(n * n, n * n);
    for (std::size_t j = 0; j < k; ++j) {
      ComplexVector v(n * n);
      for (Eigen::Index p = 0; p < n; ++p)
        for (Eigen::Index q = 0; q < n; ++q) v(p * n + q) = a[j](p, q);
      choi += v * v.adjoint();
    }
    choi /= static_cast<double>(d);
    const RealVector choi_eval = eigh(choi).values;
    const DiscreteDistribution p = pi_matrix(extremal_unraveling(a, mixed), mixed).diagonal();
    std::vector<double> sorted(p.probs().begin(), p.probs().end());
    std::sort(sorted.begin(), sorted.end());
    const Eigen::Index offset = choi_eval.size() - static_cast<Eigen::Index>(k);
    for (Eigen::Index i = 0; i < offset; ++i) EXPECT_NEAR(choi_eval(i), 0.0, 1e-12);
    for (std::size_t i = 0; i < k; ++i) EXPECT_NEAR(sorted[i], choi_eval(offset + static_cast<Eigen::Index>(i)), 1e-12);
  }
}

TEST(Extremal, ShannonBruteForceOverQubitRemixes) {
  Rng rng(57);
  for (int c = 0; c < 10; ++c) {
    const KrausSet a = random_kraus_set(rng, 2, 2);
    const DensityOperator rho = random_mixed_state(rng, 2);
    const UnifiedParams sh(1.0, 0.0);
    auto h = [&](double x, double y) { return unraveling_entropy(remix_unraveling(a, qubit_unitary(x, y)), rho, sh); };
    // Global phases of the columns do not change the probabilities, so U(a, b)
    // covers every remix of two operators.
    double best = 1e300, bx = 0.0, by = 0.0;
    const int n = 200;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j < n; ++j) {
        const double x = 0.5 * kPi * i / n, y = kTwoPi * j / n;
        const double v = h(x, y);
        if (v < best) best = v, bx = x, by = y;
      }
    double step = 0.5 * kPi / n;
    while (step > 1e-9) {
      bool moved = false;
      for (auto [dx, dy] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
        const double v = h(bx + dx * step, by + dy * step);
        if (v < best) best = v, bx += dx * step, by += dy * step, moved = true;
      }
      if (!moved) step *= 0.5;
    }
    EXPECT_NEAR(unraveling_entropy(extremal_unraveling(a, rho), rho, sh), best, 1e-4);
  }
}

TEST(TwoChannel, Bounds) {
  Rng rng(71);
  const KrausSet id = identity_channel(3);
  const DensityOperator rho = random_mixed_state(rng, 3);
  const BoundReport r = two_channel_bound(id, id, rho, ConjugatePair::shannon(), 0.0, 0.0);
  EXPECT_EQ(r.scenario, "two_channel");
  EXPECT_NEAR(r.entropy_sum, 0.0, 1e-15);
  EXPECT_NEAR(r.bound, 0.0, 1e-15);
  for (int c = 0; c < 100; ++c) {
    const std::size_t d = 2 + static_cast<std::size_t>(c % 3);
    const KrausSet a = random_kraus_set(rng, d, 2 + static_cast<std::size_t>(c % 2));
    const KrausSet b = random_kraus_set(rng, d, 3);
    const DensityOperator s = random_mixed_state(rng, d);
    for (auto [alpha, p] : {std::pair{1.0, 0.0}, {2.0, 1.0}, {2.0, -1.0}, {0.75, 0.5}})
      EXPECT_GE(two_channel_bound(a, b, s, ConjugatePair::from_alpha(alpha), p, p).slack, -1e-9);
  }
  EXPECT_THROW(two_channel_bound(id, id, rho, ConjugatePair::from_alpha(2.0), 1.0, -1.0), ValidationError);
  EXPECT_THROW(two_channel_bound(id, id, rho, ConjugatePair::from_alpha(2.0), 0.0, 0.0), ValidationError);
  EXPECT_THROW(two_channel_bound(id, identity_channel(2), rho, ConjugatePair::shannon(), 0.0, 0.0), ValidationError);
}

TEST(Presets, QubitChannels) {
  for (double g : {0.0, 0.3, 1.0}) {
    EXPECT_EQ(phase_damping_channel(g).dim_in(), 2u);
    EXPECT_EQ(amplitude_damping_channel(g).size(), 2u);
  }
  EXPECT_THROW(phase_damping_channel(-0.1), ValidationError);
  EXPECT_THROW(amplitude_damping_channel(1.1), ValidationError);
  const DensityOperator one = DensityOperator::from_pure(fock_state(1, 2));
  const DensityOperator out = apply_channel(amplitude_damping_channel(1.0), one);
  EXPECT_NEAR(out.matrix()(0, 0).real(), 1.0, 1e-15);
  const DensityOperator plus = DensityOperator::from_pure(fourier_basis(2)[0]);
  const DensityOperator dephased = apply_channel(phase_damping_channel(1.0), plus);
  EXPECT_NEAR(std::abs(dephased.matrix()(0, 1)), 0.0, 1e-15);
}

TEST(Presets, RandomKrausSetIsReproducible) {
  Rng a(99), b(99);
  const KrausSet x = random_kraus_set(a, 3, 4);
  const KrausSet y = random_kraus_set(b, 3, 4);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(max_abs_diff(x[i], y[i]), 0.0);
  EXPECT_THROW(random_kraus_set(a, 0, 2), ValidationError);
}
