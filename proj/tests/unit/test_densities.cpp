#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "bkm/densities.hpp"
#include "bkm/error.hpp"
#include "bkm/samplers.hpp"
#include "bkm/stats.hpp"

namespace bkm {
namespace {

std::vector<double> sorted_values(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

TEST(NormConst, SmallN) {
  EXPECT_NEAR(log_norm_const(1), 0.0, 1e-15);
  EXPECT_NEAR(std::exp(log_norm_const(2)), 1.0 / (2.0 * std::numbers::pi), 1e-16);
  // Gamma(9/2) / (pi^{3/2} * 1 * 2 * 6), Gamma(9/2) = 105 sqrt(pi) / 16.
  const double c3 = 105.0 * std::sqrt(std::numbers::pi) / 16.0 / (std::pow(std::numbers::pi, 1.5) * 12.0);
  EXPECT_NEAR(std::exp(log_norm_const(3)), c3, 1e-15);
  EXPECT_NEAR(c3, 0.17407, 1e-5);
}

TEST(NormConst, FiniteUpTo512) {
  for (int n : {64, 128, 256, 512}) EXPECT_TRUE(std::isfinite(log_norm_const(n))) << n;
}

TEST(NormConst, AgreesWithLaplaceRoute) {
  const MBParams p(0.0, -0.5);
  for (int n = 2; n <= 6; ++n) {
    EXPECT_NEAR(log_norm_const(n), std::lgamma(0.5 * n * n) + log_mb_norm_const(n, p), 1e-12) << n;
  }
}

TEST(JointDensity, PointMassAtN1) {
  EXPECT_NEAR(log_joint_density_bkm(SimplexPoint::from({1.0})), 0.0, 1e-15);
}

TEST(JointDensity, VanishesAtDegeneracy) {
  double previous = std::numeric_limits<double>::infinity();
  for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const double v = log_joint_density_bkm(SimplexPoint::from({0.5 - eps, 0.5 + eps}));
    EXPECT_LT(v, previous);
    previous = v;
  }
  EXPECT_EQ(log_joint_density_bkm(SimplexPoint::from({0.5, 0.5})), -std::numeric_limits<double>::infinity());
}

TEST(JointDensity, N2NormalizesToOne) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double total = integrator.integrate(
      [](double r) { return 2.0 * std::exp(log_joint_density_bkm(SimplexPoint::from({r, 1.0 - r}))); }, 0.0, 0.5);
  EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST(JointDensity, PermutationSymmetric) {
  const SimplexPoint a = SimplexPoint::from({0.2, 0.3, 0.5});
  const SimplexPoint b = SimplexPoint::from({0.5, 0.2, 0.3});
  EXPECT_EQ(log_joint_density_bkm(a), log_joint_density_bkm(b));
}

TEST(SimplexPoint, Validation) {
  EXPECT_THROW(SimplexPoint::from({0.5, 0.6}), Error);
  EXPECT_THROW(SimplexPoint::from({1.0, 0.0}), Error);
  EXPECT_THROW(SimplexPoint::from({}), Error);
}

TEST(MBParams, Ranges) {
  EXPECT_THROW(MBParams(-0.1, 0.0), Error);
  EXPECT_THROW(MBParams(1.0, -1.0), Error);
  EXPECT_NO_THROW(MBParams(0.0, -0.5));
}

TEST(MBDensity, LaguerreN1) {
  const double s[] = {1.0};
  EXPECT_NEAR(log_joint_density_mb(s, MBParams(1.0, 0.0)), -1.0, 1e-15);
}

TEST(MBDensity, LogLimitMatchesBkmWeight) {
  // On the simplex e^{-sum s} = e^{-1}, leaving the BKM weight.
  const MBParams p(0.0, -0.5);
  RngStream rng(41);
  for (int n : {2, 3, 5}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> r(n);
      double total = 0.0;
      for (double& x : r) total += (x = rng.gamma(1.0));
      for (double& x : r) x /= total;
      const double mb = log_joint_density_mb(r, p) - log_mb_norm_const(n, p) + 1.0;
      EXPECT_NEAR(mb, log_bkm_weight(r), 1e-12);
    }
  }
}

TEST(MBDensity, SmallThetaApproachesLogLimit) {
  const double s[] = {0.3, 1.1, 2.5};
  const double limit = log_joint_density_mb(s, MBParams(0.0, 0.2));
  const double small = log_joint_density_mb(s, MBParams(1e-7, 0.2));
  EXPECT_NEAR(small, limit, 1e-5);
}

TEST(MBDensity, N2Theta1Normalizes) {
  const MBParams p(1.0, 0.0);
  boost::math::quadrature::exp_sinh<double> outer;
  const double inf = std::numeric_limits<double>::infinity();
  // Symmetric: integrate s1 < s2 and double.
  const double total = 2.0 * outer.integrate(
                                 [&](double s1) {
                                   boost::math::quadrature::exp_sinh<double> inner;
                                   return inner.integrate(
                                       [&](double t) {
                                         const double s[] = {s1, s1 + t};
                                         return t > 1e-14 ? std::exp(log_joint_density_mb(s, p)) : 0.0;
                                       },
                                       0.0, inf);
                                 },
                                 0.0, inf);
  EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST(Oracle, AcceptanceRatioBounded) {
  const BkmSpectrumOracle oracle(2);
  for (int i = 1; i < 1000; ++i) {
    const double a = i / 1000.0;
    const double r[] = {a, 1.0 - a};
    const double ratio = oracle.acceptance_ratio(r);
    EXPECT_GE(ratio, 0.0);
    EXPECT_LE(ratio, 1.0);
  }
  const double tiny[] = {1e-300, 1.0};
  EXPECT_LE(oracle.acceptance_ratio(tiny), 1.0);
}

TEST(Oracle, N3EnvelopeHoldsOnProposals) {
  const BkmSpectrumOracle oracle(3);
  RngStream rng(42);
  double worst = 0.0;
  for (int i = 0; i < 200000; ++i) {
    double r[3], total = 0.0;
    for (double& x : r) total += (x = rng.gamma(BkmSpectrumOracle::kProposalShape));
    if (!(total > 0.0)) continue;
    for (double& x : r) x /= total;
    if (!(std::min({r[0], r[1], r[2]}) > 0.0)) continue;
    worst = std::max(worst, oracle.acceptance_ratio(r));
  }
  // Safety factor 1.5 over the grid maximum.
  EXPECT_LE(worst, 1.0);
  EXPECT_GT(worst, 0.5);
}

TEST(Oracle, RejectsUnsupportedDimension) {
  EXPECT_THROW(BkmSpectrumOracle(4), Error);
  RngStream rng(1);
  EXPECT_THROW(rejection_sample_bkm_spectrum(5, rng), Error);
}

TEST(Oracle, N2MeanMinimumMatchesSampler) {
  RngStream a(43), b(44);
  RunningMoments oracle, sampler;
  for (int i = 0; i < 100000; ++i) {
    oracle.push(sorted_values(rejection_sample_bkm_spectrum(2, a).values()).front());
    sampler.push(sample_spectrum(EnsembleKind::BKM, 2, b).min());
  }
  const double se = std::hypot(oracle.stderr_mean(), sampler.stderr_mean());
  EXPECT_LT(std::abs(oracle.mean() - sampler.mean()), 3.0 * se);
}

TEST(Oracle, N3MarginalsMatchSampler) {
  RngStream a(45), b(46);
  std::vector<double> lo_a, mid_a, hi_a, lo_b, mid_b, hi_b;
  for (int i = 0; i < 50000; ++i) {
    const auto o = sorted_values(rejection_sample_bkm_spectrum(3, a).values());
    lo_a.push_back(o[0]);
    mid_a.push_back(o[1]);
    hi_a.push_back(o[2]);
    const Spectrum s = sample_state(EnsembleKind::BKM, 3, b).spectrum();
    lo_b.push_back(s.eigenvalues(0));
    mid_b.push_back(s.eigenvalues(1));
    hi_b.push_back(s.eigenvalues(2));
  }
  EXPECT_LT(ks_statistic(lo_a, lo_b), 0.012);
  EXPECT_LT(ks_statistic(mid_a, mid_b), 0.012);
  EXPECT_LT(ks_statistic(hi_a, hi_b), 0.012);
}

TEST(Oracle, SamplesLieOnSimplex) {
  RngStream rng(47);
  for (int i = 0; i < 1000; ++i) {
    const SimplexPoint p = rejection_sample_bkm_spectrum(3, rng);
    double total = 0.0;
    for (double x : p.values()) {
      EXPECT_GT(x, 0.0);
      total += x;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace bkm
