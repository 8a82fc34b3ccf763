#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lrc/error.hpp"
#include "lrc/transfer.hpp"
#include "lrc/verify.hpp"
#include "test_util.hpp"

namespace lrc {
namespace {

using testing::cubic_map;
using testing::nonlinear_map;
using testing::random_series;

FourierSeries mode(int n, int order) {
  FourierSeries f(order);
  f.set(n, 0.5);  // cos(2 pi n x)
  return f;
}

TEST(ApplyTransfer, DoublingModeRule) {
  const CircleMap t = CircleMap::linear(2);
  const FourierSeries one = apply_transfer(t, FourierSeries::constant(1.0, 4));
  EXPECT_LT(max_coeff_distance(one, FourierSeries::constant(1.0, 4)), 1e-14);
  // e^{4 pi i x} -> e^{2 pi i x}, e^{2 pi i x} -> 0, written with cosines.
  EXPECT_LT(max_coeff_distance(apply_transfer(t, mode(2, 4)), mode(1, 4)),
            1e-14);
  EXPECT_LT(max_coeff_distance(apply_transfer(t, mode(1, 4)), FourierSeries(4)),
            1e-14);
  EXPECT_LT(max_coeff_distance(apply_transfer(t, FourierSeries::sine(3, 1.0, 8)),
                               FourierSeries(8)),
            1e-14);
}

TEST(ApplyTransfer, GridInput) {
  const CircleMap t = CircleMap::linear(2);
  const GridFunction w = idft(FourierSeries::sine(2), 64);
  const GridFunction out = apply_transfer(t, w);
  for (std::size_t j = 0; j < out.size(); ++j)
    EXPECT_NEAR(out.samples[j], std::sin(kTwoPi * out.point(j)), 1e-13);
}

TEST(ApplyTransfer, NonlinearConstantMatchesUlamRowSums) {
  const CircleMap t = nonlinear_map();
  const std::size_t bins = std::size_t{1} << 15;
  const FourierSeries l1 =
      apply_transfer(t, FourierSeries::constant(1.0, 32), 32);
  EXPECT_NEAR(l1.mean(), 1.0, 1e-12);
  // Row sums of P times M are bin averages of L1.
  const UlamModel ulam = ulam_build(t, bins);
  std::vector<double> ones(bins, 1.0);
  const std::vector<double> rows = ulam.apply(ones);
  BinnedFunction b{rows};
  EXPECT_LT(compare_l1(b, l1), 1e-6);
}

TEST(ApplyTransfer, IntegralPreservedProperty) {
  std::mt19937 rng(1);
  for (const CircleMap& t : {nonlinear_map(), cubic_map()}) {
    for (int k = 0; k < 10; ++k) {
      const FourierSeries w = random_series(rng, 16);
      EXPECT_NEAR(apply_transfer(t, w, 64).mean(), w.mean(), 1e-10);
    }
  }
}

TEST(ApplyTransfer, PositivityProperty) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const CircleMap& t : {nonlinear_map(), cubic_map()}) {
    const TransferSampler s(t, 256);
    for (int k = 0; k < 10; ++k) {
      const double c = u(rng), wd = 0.02 + 0.1 * u(rng);
      const GridFunction out = s.apply([&](double y) {
        const double d = circle_distance(y, c);
        return std::max(0.0, 1.0 - std::abs(d) / wd);
      });
      for (double v : out.samples) EXPECT_GE(v, -1e-12);
    }
  }
}

TEST(GalerkinMatrix, Doubling) {
  const int n = 16;
  const TransferMatrix m = galerkin_matrix(CircleMap::linear(2), n);
  for (int j = -n; j <= n; ++j)
    for (int k = -n; k <= n; ++k) {
      const double expect = (k == 2 * j) ? 1.0 : 0.0;
      EXPECT_NEAR(std::abs(m.entry(j, k) - expect), 0.0, 1e-12);
    }
}

TEST(GalerkinMatrix, RowZeroIsUnitVector) {
  for (const CircleMap& t : {nonlinear_map(), cubic_map()}) {
    const TransferMatrix m = galerkin_matrix(t, 24);
    for (int k = -24; k <= 24; ++k)
      EXPECT_LT(std::abs(m.entry(0, k) - (k == 0 ? 1.0 : 0.0)), 1e-10);
  }
}

TEST(GalerkinMatrix, AgreesWithPointwiseTransfer) {
  std::mt19937 rng(3);
  const int n = 32;
  for (const CircleMap& t : {nonlinear_map(), cubic_map()}) {
    const TransferMatrix m = galerkin_matrix(t, n);
    for (int k = 0; k < 5; ++k) {
      const FourierSeries w = random_series(rng, n / 2);
      const FourierSeries a = m.apply(w);
      const FourierSeries b = apply_transfer(t, w, n);
      EXPECT_LT(max_coeff_distance(a, b), 1e-8);
    }
  }
}

TEST(GalerkinMatrix, LeadingEigenvalueIsOne) {
  const TransferMatrix m = galerkin_matrix(nonlinear_map(), 32);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m.entries());
  double best = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    best = std::max(best, std::abs(es.eigenvalues()[i]));
  EXPECT_NEAR(best, 1.0, 1e-10);
}

TEST(GalerkinMatrix, Deterministic) {
  const TransferMatrix a = galerkin_matrix(cubic_map(), 20);
  const TransferMatrix b = galerkin_matrix(cubic_map(), 20);
  EXPECT_EQ((a.entries() - b.entries()).norm(), 0.0);
}

TEST(InvariantDensity, LinearMapsAreUniform) {
  for (int d : {2, 3}) {
    const FourierSeries rho = invariant_density(CircleMap::linear(d), 32);
    EXPECT_LT(max_coeff_distance(rho, FourierSeries::constant(1.0)), 1e-14);
  }
}

TEST(InvariantDensity, NonlinearResidualsAndPositivity) {
  for (const CircleMap& t : {nonlinear_map(), cubic_map()}) {
    const DensityReport r = solve_invariant_density(t, 64);
    EXPECT_NEAR(r.density.mean(), 1.0, 1e-15);
    EXPECT_LT(r.galerkin_residual, 1e-10);
    EXPECT_LT(r.pointwise_residual, 1e-9);
    EXPECT_GT(r.min_value, 0.0);
    // Independent pointwise check through the sampler.
    const TransferSampler s(t, 1024);
    const GridFunction lr = s.apply(r.density);
    for (std::size_t j = 0; j < lr.size(); ++j)
      EXPECT_NEAR(lr.samples[j], r.density.evaluate(lr.point(j)), 1e-9);
  }
}

TEST(InvariantDensity, MatchesUlamOracle) {
  const FourierSeries rho = invariant_density(nonlinear_map(), 64);
  const UlamModel u = ulam_build(nonlinear_map(), std::size_t{1} << 15);
  EXPECT_LT(compare_l1(u.stationary(), rho), 1e-3);
}

TEST(SolveZeroMean, DoublingNeumannExamples) {
  const CircleMap t = CircleMap::linear(2);
  const FourierSeries a = solve_zero_mean(t, FourierSeries::sine(1, 1.0, 16), 16);
  EXPECT_LT(max_coeff_distance(a, FourierSeries::sine(1)), 1e-13);
  const FourierSeries b = solve_zero_mean(t, FourierSeries(16), 16);
  EXPECT_EQ(max_coeff_distance(b, FourierSeries(0)), 0.0);
  const FourierSeries c = solve_zero_mean(t, FourierSeries::sine(2), 16);
  EXPECT_LT(max_coeff_distance(c, FourierSeries::sine(2) + FourierSeries::sine(1)),
            1e-13);
}

TEST(SolveZeroMean, ResidualAndRejection) {
  const CircleMap t = nonlinear_map();
  const ZeroMeanSolver solver(galerkin_matrix(t, 32));
  EXPECT_GT(solver.condition(), 1.0);
  EXPECT_LT(solver.condition(), 1e12);
  std::mt19937 rng(4);
  const FourierSeries rhs = random_series(rng, 32, 1.0, true);
  double res = 1.0;
  const FourierSeries v = solver.solve(rhs, &res);
  EXPECT_LT(res, 1e-10);
  EXPECT_EQ(v[0], Complex(0.0, 0.0));
  const FourierSeries back = v - solver.matrix().apply(v);
  EXPECT_LT(max_coeff_distance(back, rhs), 1e-10);
  EXPECT_THROW(solver.solve(FourierSeries::constant(1e-6, 3)), InvalidArgument);
}

TEST(Conjugacy, IdentityDiffeo) {
  const ConjugacyReport r = transfer_conjugacy_check(
      nonlinear_map(), FourierSeries(0), FourierSeries::cosine(1, 0.3) +
                                             FourierSeries::constant(1.0));
  EXPECT_LT(r.residual, 1e-12);
}

TEST(Conjugacy, SmoothDiffeoOnDoubling) {
  const FourierSeries q = FourierSeries::sine(1, 0.05 / kTwoPi);
  const FourierSeries w =
      FourierSeries::constant(1.0) + FourierSeries::sine(2, 0.4);
  const ConjugacyReport r =
      transfer_conjugacy_check(CircleMap::linear(2), q, w, 1024);
  EXPECT_EQ(r.lhs.size(), 1024u);
  EXPECT_LT(r.residual, 1e-8);
}

TEST(Conjugacy, DensityConjugacyGivesHaarInvariance) {
  const CircleMap t = nonlinear_map();
  const FourierSeries rho = invariant_density(t, 64);
  // h(x) = int_0^x rho = x + q(x) with q(0) = 0.
  FourierSeries q = antiderivative(rho - FourierSeries::constant(1.0));
  q -= FourierSeries::constant(q.evaluate(0.0));
  const ConjugacyReport r =
      transfer_conjugacy_check(t, q, FourierSeries::constant(1.0), 1024);
  EXPECT_LT(r.residual, 1e-8);
  for (double v : r.lhs) EXPECT_NEAR(v, 1.0, 1e-8);
}

TEST(Conjugacy, RejectsNonDiffeo) {
  EXPECT_THROW(transfer_conjugacy_check(CircleMap::linear(2),
                                        FourierSeries::sine(1, 0.2),
                                        FourierSeries::constant(1.0)),
               InvalidArgument);
}

}  // namespace
}  // namespace lrc
