#include "nphase/pegg_barnett.hpp"
#include "nphase/random.hpp"
#include "test_util.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace nphase;
using nphase::test::max_abs_diff;

TEST(PhaseBasis, SmallestCase) {
  const PhaseBasis b = phase_basis(1);
  ASSERT_EQ(b.dim, 2u);
  EXPECT_NEAR(b.angles[1], kPi, 1e-15);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_LT(std::abs(b.states[0][0] - h) + std::abs(b.states[0][1] - h), 1e-15);
  EXPECT_LT(std::abs(b.states[1][0] - h) + std::abs(b.states[1][1] + h), 1e-15);
  EXPECT_THROW(phase_basis(0), ValidationError);
}

TEST(PhaseBasis, CompleteAndUnbiased) {
  for (std::size_t n : {1u, 4u, 15u, 40u}) {
    const PhaseBasis b = phase_basis(n, 0.3);
    const auto d = static_cast<Eigen::Index>(b.dim);
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& s : b.states) {
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) sum(i, j) += s.amplitudes()(i) * std::conj(s.amplitudes()(j));
      for (Eigen::Index k = 0; k < d; ++k) EXPECT_NEAR(std::norm(s.amplitudes()(k)), 1.0 / static_cast<double>(b.dim), 1e-12);
    }
    EXPECT_LT(max_abs_diff(sum, ComplexMatrix::Identity(d, d)), 1e-10);
    EXPECT_NEAR(b.angles[1] - b.angles[0], kTwoPi / static_cast<double>(b.dim), 1e-14);
  }
}

TEST(PhaseOperator, SpectrumIsThetaM) {
  const Eigensystem two = eigh(phase_operator(1));
  EXPECT_NEAR(two.values(0), 0.0, 1e-14);
  EXPECT_NEAR(two.values(1), kPi, 1e-14);
  for (std::size_t n : {3u, 10u, 31u}) {
    const ComplexMatrix theta = phase_operator(n);
    EXPECT_LT(max_abs_diff(theta, theta.adjoint()), 1e-12);
    const Eigensystem es = eigh(theta);
    for (std::size_t m = 0; m <= n; ++m)
      EXPECT_NEAR(es.values(static_cast<Eigen::Index>(m)), kTwoPi * static_cast<double>(m) / static_cast<double>(n + 1),
                  1e-10);
    const PhaseBasis b = phase_basis(n);
    for (std::size_t k = 0; k <= n; ++k)
      for (std::size_t m = 0; m <= n; ++m) {
        const cplx e = b.states[k].amplitudes().dot(theta * b.states[m].amplitudes());
        EXPECT_LT(std::abs(e - (k == m ? cplx(b.angles[m], 0.0) : cplx(0.0, 0.0))), 1e-10);
      }
  }
}

TEST(PhaseMoment, ZerothAndFirstMoments) {
  const DensityOperator fock = DensityOperator::from_pure(fock_state(2, 4));
  const PhaseMoment m0 = phase_moment(fock, 0, 10);
  EXPECT_NEAR(m0.finite_n, 1.0, 1e-12);
  EXPECT_NEAR(m0.integral, 1.0, 1e-12);
  // Uniform phase: tr(Θρ) = πN/(N+1), the integral is π.
  for (std::size_t n : {10u, 100u, 400u}) {
    const PhaseMoment m1 = phase_moment(fock, 1, n);
    EXPECT_NEAR(m1.finite_n, kPi * static_cast<double>(n) / static_cast<double>(n + 1), 1e-10);
    EXPECT_NEAR(m1.integral, kPi, 1e-12);
  }
  EXPECT_THROW(phase_moment(fock, 1, 2), ValidationError);
}

TEST(PhaseMoment, CoherentCentroid) {
  // z = 3 (φ = 0) over the symmetric window [−π, π): the mean phase is 0 and
  // the second moment approaches the Gaussian variance 1/(4|z|²).
  const DensityOperator rho = DensityOperator::from_pure(coherent_state(cplx(3.0, 0.0)));
  const PhaseMoment m1 = phase_moment(rho, 1, 400, -kPi);
  EXPECT_NEAR(m1.integral, 0.0, 1e-10);
  EXPECT_NEAR(m1.finite_n, 0.0, 5e-2);
  const PhaseMoment m2 = phase_moment(rho, 2, 400, -kPi);
  EXPECT_NEAR(m2.integral, 1.0 / 36.0, 3e-3);
  EXPECT_NEAR(m2.finite_n, m2.integral, 1e-2);
}

TEST(PhaseDensity, FlatForNumberDiagonalStates) {
  for (std::size_t n : {0u, 3u, 10u}) {
    const DensityFunction1D p = phase_density(DensityOperator::from_pure(fock_state(n, n + 1)), 257);
    for (double v : p.values()) EXPECT_NEAR(v, 1.0 / kTwoPi, 1e-15);
  }
  const DensityFunction1D th = phase_density(thermal_state(1.0));
  for (double v : th.values()) EXPECT_NEAR(v, 1.0 / kTwoPi, 1e-10);
}

TEST(PhaseDensity, PureStateIsSquaredAmplitude) {
  Rng rng(12);
  for (int c = 0; c < 20; ++c) {
    const PureState psi = random_pure_state(rng, 6 + static_cast<std::size_t>(c));
    const DensityOperator rho = DensityOperator::from_pure(psi);
    for (double theta : {0.0, 0.4, 2.0, 5.5}) EXPECT_NEAR(phase_density_at(rho, theta), std::norm(phase_amplitude(psi, theta)), 1e-13);
    const DensityFunction1D p = phase_density(rho);
    EXPECT_NEAR(p.total(), 1.0, 1e-12);
  }
  EXPECT_THROW(phase_density(DensityOperator::from_pure(fock_state(0, 40)), 40), ValidationError);
}

TEST(PhaseDensity, FiniteNProbabilitiesSampleF) {
  Rng rng(31);
  const PureState psi = random_pure_state(rng, 5);
  for (std::size_t n : {4u, 9u, 30u}) {
    const DiscreteDistribution p = finite_phase_distribution(psi, n);
    const PhaseBasis b = phase_basis(n);
    for (std::size_t m = 0; m <= n; ++m)
      EXPECT_NEAR(p[m], kTwoPi / static_cast<double>(n + 1) * std::norm(phase_amplitude(psi, b.angles[m])), 1e-14);
  }
  EXPECT_THROW(finite_phase_distribution(psi, 3), ValidationError);
}

TEST(PhaseDensity, RiemannSumsConvergeToIntegral) {
  Rng rng(77);
  const std::size_t d = 4;
  const PureState psi = random_pure_state(rng, d);
  boost::math::quadrature::gauss_kronrod<double, 61> gk;
  auto riemann = [&](double b, std::size_t n) {
    double sum = 0.0;
    for (double theta : phase_basis(n).angles) sum += std::pow(std::abs(phase_amplitude(psi, theta)), b);
    return sum * kTwoPi / static_cast<double>(n + 1);
  };
  // |F|^b has cusps at the zeros of F when b < 2, so those sums need a finer N.
  for (auto [b, mult] : {std::pair{2.5, 8u}, {3.0, 8u}, {4.0, 8u}, {1.2, 32u}, {1.5, 32u}}) {
    const double integral =
        gk.integrate([&](double t) { return std::pow(std::abs(phase_amplitude(psi, t)), b); }, 0.0, kTwoPi, 15, 1e-14);
    EXPECT_NEAR(riemann(b, mult * d), integral, 1e-4) << b;
    EXPECT_LT(std::abs(riemann(b, 2 * mult * d) - integral), std::abs(riemann(b, mult * d / 2) - integral)) << b;
  }
}

TEST(NumberDistribution, KnownStates) {
  const DiscreteDistribution f = number_distribution(DensityOperator::from_pure(fock_state(3, 6)));
  EXPECT_EQ(f[3], 1.0);
  const cplx z(2.0, 1.0);
  const DiscreteDistribution q = number_distribution(DensityOperator::from_pure(coherent_state(z)));
  const double lam = std::norm(z);
  for (std::size_t n = 0; n < 15; ++n)
    EXPECT_NEAR(q[n], std::exp(-lam + static_cast<double>(n) * std::log(lam) - std::lgamma(n + 1.0)), 1e-13);
  const double nbar = 5.0;
  const DiscreteDistribution t = number_distribution(thermal_state(nbar));
  for (std::size_t n = 0; n < 20; ++n)
    EXPECT_NEAR(t[n], std::pow(nbar, n) / std::pow(1.0 + nbar, n + 1.0), 1e-12);
}

TEST(PhaseBins, MatchGridBinning) {
  Rng rng(5);
  const DensityOperator rho = DensityOperator::from_pure(random_pure_state(rng, 32));
  const PhasePartition part({0.0, 0.3, 1.9, 2.0, 4.4, kTwoPi});
  const DiscreteDistribution exact = phase_bins(rho, part);
  const DiscreteDistribution grid = bin_density(phase_density(rho, 16385), part);
  for (std::size_t m = 0; m < part.bins(); ++m) EXPECT_NEAR(exact[m], grid[m], 1e-9);
  const DiscreteDistribution flat = phase_bins(thermal_state(2.0), PhasePartition::equal(5));
  for (double r : flat.probs()) EXPECT_NEAR(r, 0.2, 1e-12);
}

TEST(GaussianPair, PeaksAndNormalization) {
  const cplx z = std::polar(10.0, 1.0);
  const GaussianPair g = gaussian_pair(z);
  EXPECT_NEAR(gaussian_phase_density(z, 1.0), std::sqrt(2.0 * 100.0 / kPi), 1e-12);
  EXPECT_NEAR(gaussian_number_density(z, 100.0), 1.0 / (std::sqrt(kTwoPi) * 10.0), 1e-15);
  EXPECT_NEAR(g.number.total(), 1.0, 1e-10);
  EXPECT_NEAR(g.phase.total(), 1.0, 1e-10);
  EXPECT_NEAR(g.phase.max_value(), std::sqrt(200.0 / kPi), 1e-3);
  EXPECT_THROW(gaussian_pair(cplx(2.0, 0.0)), ValidationError);
  // Wrapping: the density at φ ± 2π equals the peak.
  EXPECT_NEAR(gaussian_phase_density(z, 1.0 + kTwoPi), gaussian_phase_density(z, 1.0), 1e-9);
}

TEST(GaussianPair, FourierRelation) {
  for (double r : {3.0, 5.0, 10.0}) EXPECT_LT(gaussian_fourier_residual(cplx(r, 0.0)), 1e-6) << r;
}

TEST(MultiphotonBinned, SymmetryAndNormalization) {
  const cplx z(10.0, 0.0);
  // Edges symmetric about φ = π for z = −10.
  const cplx zpi(-10.0, 0.0);
  const MultiphotonBinned b = multiphoton_binned(zpi, PhasePartition::equal(16));
  for (std::size_t m = 0; m < 8; ++m) EXPECT_NEAR(b.phase[m], b.phase[15 - m], 1e-10);

  const MultiphotonBinned c = multiphoton_binned(z, PhasePartition::equal(16));
  EXPECT_EQ(c.first_n, 0);
  // erf-sum oracle: Σ q̃_n over the window is the Gaussian mass inside it.
  const double lo = static_cast<double>(c.first_n);
  const double hi = lo + static_cast<double>(c.number.size());
  const double mass = 0.5 * (std::erf((hi - 100.0) / (std::sqrt(2.0) * 10.0)) - std::erf((lo - 100.0) / (std::sqrt(2.0) * 10.0)));
  EXPECT_NEAR(mass, 1.0, 1e-8);
  EXPECT_NEAR(c.number[100], 0.5 * (std::erf(1.0 / (std::sqrt(2.0) * 10.0))), 1e-12);
  EXPECT_NEAR(c.max_bin_width, kPi / 8.0, 1e-15);
}

TEST(MultiphotonBinned, ShannonSlack) {
  const MultiphotonBinned b = multiphoton_binned(cplx(10.0, 0.0), PhasePartition::equal(16));
  const BoundReport r = multiphoton_check(b, ConjugatePair::shannon(), 0.0, 0.0);
  EXPECT_NEAR(r.bound, std::log(std::exp(1.0) * kPi / (kPi / 8.0)), 1e-13);
  EXPECT_GE(r.slack, -1e-9);
  for (double beta : {0.6, 0.75, 0.9}) {
    const auto pair = ConjugatePair::from_beta(beta);
    for (auto [s, t] : {std::pair{0.0, 0.0}, {1.0, 1.0}, {-1.0, -1.0}})
      EXPECT_GE(multiphoton_check(b, pair, s, t).slack, -1e-9);
  }
}

TEST(NumberPhaseRelation, FockSaturatesShannon) {
  for (std::size_t m : {4u, 8u, 16u}) {
    const NumberPhaseScenario scn(DensityOperator::from_pure(fock_state(3, 8)), PhasePartition::equal(m));
    const BoundReport r = theorem2_check(scn, ConjugatePair::shannon(), 0.0, 0.0);
    EXPECT_NEAR(r.entropy_sum, std::log(static_cast<double>(m)), 1e-12);
    EXPECT_NEAR(r.slack, 0.0, 1e-9);
  }
}

TEST(NumberPhaseRelation, RenyiBoundAndRandomSlack) {
  const NumberPhaseScenario fock(DensityOperator::from_pure(fock_state(0, 2)), PhasePartition::equal(8));
  EXPECT_NEAR(theorem2_check(fock, ConjugatePair::from_beta(0.6), 0.0, 0.0).bound, std::log(8.0), 1e-14);
  for (int c = 0; c < 60; ++c) {
    Rng rng(derive_seed(2024, static_cast<std::uint64_t>(c)));
    const NumberPhaseScenario scn(DensityOperator::from_pure(random_pure_state(rng, 32)),
                                  PhasePartition::equal(4u << (c % 3)));
    for (double beta : {0.6, 0.8})
      for (double s : {0.0, 1.0, -1.0}) EXPECT_GE(theorem2_check(scn, ConjugatePair::from_beta(beta), s, s).slack, -1e-9);
  }
  EXPECT_THROW(NumberPhaseScenario(thermal_state(1.0), PhasePartition::equal(4), 4097, 1e-6), ValidationError);
}

TEST(ContinuousRelation, ContinuousChecks) {
  Rng rng(9);
  for (int c = 0; c < 20; ++c) {
    const DensityOperator rho = DensityOperator::from_pure(random_pure_state(rng, 32));
    for (double beta : {0.6, 0.75, 1.0}) EXPECT_GE(continuous_renyi_check(rho, ConjugatePair::from_beta(beta)).slack, -1e-9);
  }
  // A flat density saturates nothing but sits exactly at ln 2π with a Fock state.
  const DensityOperator fock = DensityOperator::from_pure(fock_state(2, 5));
  EXPECT_NEAR(continuous_renyi_check(fock, ConjugatePair::shannon()).slack, 0.0, 1e-12);
  const auto unified = continuous_unified_check(fock, ConjugatePair::from_beta(0.75), 1.0, 1.0);
  ASSERT_TRUE(unified.has_value());
  EXPECT_GE(unified->slack, -1e-9);
  // Peaked coherent-state density exceeds one: no claim.
  EXPECT_FALSE(continuous_unified_check(DensityOperator::from_pure(coherent_state(cplx(10.0, 0.0))),
                                        ConjugatePair::from_beta(0.75), 1.0, 1.0)
                   .has_value());
}

TEST(TotalVariation, Basics) {
  const auto a = DensityFunction1D::sample([](double) { return 1.0 / kTwoPi; }, 0.0, kTwoPi, 101);
  EXPECT_EQ(total_variation(a, a), 0.0);
  const auto b = DensityFunction1D::sample([](double x) { return (1.0 + std::cos(x)) / kTwoPi; }, 0.0, kTwoPi, 101);
  EXPECT_NEAR(total_variation(a, b), 2.0 / kPi / 2.0, 1e-3);
  const auto c = DensityFunction1D::sample([](double) { return 1.0 / kTwoPi; }, 0.0, kTwoPi, 51);
  EXPECT_THROW(total_variation(a, c), ValidationError);
}
