#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "bkm/analytics.hpp"
#include "bkm/error.hpp"
#include "bkm/montecarlo.hpp"
#include "bkm/rng.hpp"
#include "bkm/stats.hpp"

namespace bkm {
namespace {

Spectrum spectrum_of(std::vector<double> values) {
  Spectrum s;
  s.eigenvalues = Eigen::Map<RealVector>(values.data(), static_cast<Eigen::Index>(values.size()));
  return s;
}

TEST(Entropy, ReferenceValues) {
  EXPECT_EQ(entropy(spectrum_of({0.0, 0.0, 1.0})), 0.0);
  EXPECT_NEAR(entropy(spectrum_of({0.5, 0.5})), std::numbers::ln2, 1e-15);
  EXPECT_NEAR(entropy(spectrum_of({0.2, 0.8})), -0.2 * std::log(0.2) - 0.8 * std::log(0.8), 1e-15);
  EXPECT_NEAR(entropy(spectrum_of({0.2, 0.8})), 0.500402, 1e-6);
}

TEST(Purity, ReferenceValues) {
  EXPECT_EQ(purity(spectrum_of({0.0, 1.0})), 1.0);
  EXPECT_NEAR(purity(spectrum_of({0.25, 0.25, 0.25, 0.25})), 0.25, 1e-15);
}

TEST(Entropy, BoundsOnSampledStates) {
  for (EnsembleKind kind : {EnsembleKind::BKM, EnsembleKind::HS, EnsembleKind::BH}) {
    BatchConfig config;
    config.kind = kind;
    config.dim = 6;
    config.samples = 2000;
    config.seed = 50;
    for (const Spectrum& s : collect_spectra(config)) {
      const double h = entropy(s);
      const double p = purity(s);
      EXPECT_GE(h, 0.0);
      EXPECT_LE(h, std::log(6.0) + 1e-12);
      EXPECT_GE(p, 1.0 / 6.0 - 1e-12);
      EXPECT_LE(p, 1.0 + 1e-12);
    }
  }
}

TEST(Entropy, ZeroIffPure) {
  const Spectrum pure = spectrum_of({0.0, 0.0, 1.0});
  EXPECT_EQ(entropy(pure), 0.0);
  EXPECT_EQ(purity(pure), 1.0);
  const Spectrum almost = spectrum_of({1e-9, 1.0 - 1e-9});
  EXPECT_GT(entropy(almost), 0.0);
  EXPECT_LT(purity(almost), 1.0);
}

TEST(Purity, BkmMeanMatchesSecondMoment) {
  BatchConfig config;
  config.dim = 100;
  config.samples = 3000;
  config.seed = 51;
  const BatchResult r = run_batch(config);
  EXPECT_NEAR(r.summary.purity.mean() / (8.0 / 300.0), 1.0, 0.05);
}

TEST(RunningMoments, MatchesDirectFormulas) {
  const std::vector<double> xs = {1.0, 4.0, 2.0, 8.0, 5.0};
  RunningMoments m;
  for (double x : xs) m.push(x);
  EXPECT_EQ(m.count(), 5u);
  EXPECT_DOUBLE_EQ(m.mean(), 4.0);
  EXPECT_DOUBLE_EQ(m.variance(), 7.5);
  EXPECT_DOUBLE_EQ(m.stderr_mean(), std::sqrt(7.5 / 5.0));
  EXPECT_EQ(m.min(), 1.0);
  EXPECT_EQ(m.max(), 8.0);
}

TEST(RunningMoments, MergeEqualsConcatenation) {
  RngStream rng(52);
  std::vector<double> xs(3001);
  for (double& x : xs) x = 3.0 + rng.normal() * 1e3;
  for (std::size_t split : {std::size_t{0}, std::size_t{1}, std::size_t{1500}, std::size_t{3001}}) {
    RunningMoments all, left, right;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      all.push(xs[i]);
      (i < split ? left : right).push(xs[i]);
    }
    RunningMoments merged = left;
    merged.merge(right);
    EXPECT_EQ(merged.count(), all.count());
    EXPECT_NEAR(merged.mean(), all.mean(), 1e-10 * std::abs(all.mean()));
    EXPECT_NEAR(merged.m2(), all.m2(), 1e-10 * all.m2());
    EXPECT_EQ(merged.min(), all.min());
    EXPECT_EQ(merged.max(), all.max());
  }
}

TEST(RunningMoments, MergeAssociativeAndCommutative) {
  RngStream rng(53);
  RunningMoments a, b, c;
  for (int i = 0; i < 100; ++i) a.push(rng.normal());
  for (int i = 0; i < 37; ++i) b.push(5.0 + rng.normal());
  for (int i = 0; i < 250; ++i) c.push(-2.0 + 3.0 * rng.normal());
  RunningMoments ab_c = a;
  ab_c.merge(b);
  ab_c.merge(c);
  RunningMoments bc = b;
  bc.merge(c);
  RunningMoments a_bc = a;
  a_bc.merge(bc);
  RunningMoments cba = c;
  cba.merge(b);
  cba.merge(a);
  for (const RunningMoments* m : {&a_bc, &cba}) {
    EXPECT_NEAR(m->mean(), ab_c.mean(), 1e-10);
    EXPECT_NEAR(m->m2(), ab_c.m2(), 1e-10 * ab_c.m2());
  }
}

TEST(SampleSummary, MergeMatchesSingleStream) {
  BatchConfig config;
  config.dim = 5;
  config.samples = 1000;
  config.seed = 54;
  const auto spectra = collect_spectra(config);
  SampleSummary all, first, second;
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    all.add(spectra[i]);
    (i < 400 ? first : second).add(spectra[i]);
  }
  first.merge(second);
  EXPECT_EQ(first.count(), all.count());
  EXPECT_NEAR(first.entropy.mean(), all.entropy.mean(), 1e-10);
  EXPECT_NEAR(first.entropy.variance(), all.entropy.variance(), 1e-10);
  EXPECT_NEAR(first.r_min.mean(), all.r_min.mean(), 1e-10);
  EXPECT_NEAR(first.purity.variance(), all.purity.variance(), 1e-10);
}

TEST(Standardize, TwoPoints) {
  const std::vector<double> xs = {0.0, 2.0};
  const auto z = standardize(xs);
  EXPECT_NEAR(z[0], -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(z[1], 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Standardize, ZeroVarianceAndTooShort) {
  const std::vector<double> constant(5, 3.0);
  try {
    standardize(constant);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroVariance);
  }
  const std::vector<double> one = {1.0};
  EXPECT_THROW(standardize(one), Error);
}

TEST(Standardize, UnitMoments) {
  RngStream rng(55);
  std::vector<double> xs(777);
  for (double& x : xs) x = 1e4 + 17.0 * rng.gamma(2.0);
  const auto z = standardize(xs);
  RunningMoments m;
  for (double v : z) m.push(v);
  EXPECT_NEAR(m.mean(), 0.0, 1e-10);
  EXPECT_NEAR(m.stddev(), 1.0, 1e-10);
}

TEST(ShapeStatistics, GaussianAndSkewedSamples) {
  RngStream rng(56);
  std::vector<double> gauss(200000), expo(200000);
  for (double& x : gauss) x = rng.normal();
  for (double& x : expo) x = rng.gamma(1.0);
  const auto g = shape_statistics(gauss);
  EXPECT_NEAR(g.skewness, 0.0, 0.02);
  EXPECT_NEAR(g.excess_kurtosis, 0.0, 0.05);
  const auto e = shape_statistics(expo);
  EXPECT_NEAR(e.skewness, 2.0, 0.1);
  EXPECT_NEAR(e.excess_kurtosis, 6.0, 0.6);
}

TEST(Histogram, CountsSumToTotal) {
  Histogram h = Histogram::uniform(-4.0, 4.0, 61);
  RngStream rng(57);
  for (int i = 0; i < 10000; ++i) h.add(rng.normal() * 2.0);
  std::uint64_t sum = 0;
  for (auto c : h.counts()) sum += c;
  EXPECT_EQ(sum + h.underflow() + h.overflow(), h.total());
  EXPECT_GT(h.underflow() + h.overflow(), 0u);
  for (int b = 0; b + 1 < static_cast<int>(h.edges().size()); ++b) EXPECT_LT(h.edges()[b], h.edges()[b + 1]);
}

TEST(Histogram, EdgesAndDensity) {
  Histogram h = Histogram::uniform(0.0, 1.0, 4);
  h.add(0.0);
  h.add(0.25);
  h.add(1.0);
  h.add(0.999);
  EXPECT_EQ(h.counts()[0], 1u);
  EXPECT_EQ(h.counts()[1], 1u);
  EXPECT_EQ(h.counts()[3], 2u);
  double integral = 0.0;
  const auto d = h.density();
  for (int b = 0; b < h.bins(); ++b) integral += d[b] * h.width(b);
  EXPECT_NEAR(integral, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(h.center(0), 0.125);
}

TEST(Histogram, RejectsBadEdges) {
  EXPECT_THROW(Histogram({0.0, 0.0, 1.0}), Error);
  EXPECT_THROW(Histogram({1.0}), Error);
  EXPECT_THROW(Histogram::uniform(1.0, 0.0, 3), Error);
}

TEST(Histogram, MergeAddsCounts) {
  Histogram a = Histogram::uniform(0.0, 1.0, 3), b = Histogram::uniform(0.0, 1.0, 3);
  a.add(0.1);
  b.add(0.9);
  b.add(2.0);
  a.merge(b);
  EXPECT_EQ(a.total(), 3u);
  EXPECT_EQ(a.overflow(), 1u);
  EXPECT_THROW(a.merge(Histogram::uniform(0.0, 2.0, 3)), Error);
}

TEST(RescaledMarginal, SingleMixedQubit) {
  const std::vector<Spectrum> spectra = {spectrum_of({0.5, 0.5})};
  const Histogram h = empirical_rescaled_marginal(spectra, 64);
  const auto d = h.density();
  int nonzero = 0;
  for (int b = 0; b < h.bins(); ++b) {
    if (h.counts()[b] > 0) {
      ++nonzero;
      EXPECT_LE(h.edges()[b], 1.0);
      EXPECT_GT(h.edges()[b + 1], 1.0);
      EXPECT_EQ(h.counts()[b], 2u);
    }
  }
  EXPECT_EQ(nonzero, 1);
}

TEST(RescaledMarginal, DimensionMismatch) {
  const std::vector<Spectrum> spectra = {spectrum_of({0.5, 0.5}), spectrum_of({0.2, 0.3, 0.5})};
  try {
    empirical_rescaled_marginal(spectra, 10);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DimMismatch);
  }
}

TEST(RescaledMarginal, DensityIntegratesToOne) {
  BatchConfig config;
  config.dim = 16;
  config.samples = 500;
  config.seed = 58;
  const auto spectra = collect_spectra(config);
  const Histogram h = empirical_rescaled_marginal(spectra, 40, 20.0);
  EXPECT_EQ(h.overflow(), 0u);
  double integral = 0.0;
  const auto d = h.density();
  for (int b = 0; b < h.bins(); ++b) integral += d[b] * h.width(b);
  EXPECT_NEAR(integral, 1.0, 1e-12);
}

TEST(KsStatistic, Extremes) {
  const std::vector<double> a = {0.1, 0.5, 0.9};
  EXPECT_EQ(ks_statistic(a, a), 0.0);
  const std::vector<double> b = {2.0, 3.0};
  EXPECT_EQ(ks_statistic(a, b), 1.0);
  const std::vector<double> empty;
  EXPECT_THROW(ks_statistic(a, empty), Error);
}

TEST(KsStatistic, HalvesOfUniformStream) {
  RngStream rng(59);
  std::vector<double> a(50000), b(50000);
  for (double& x : a) x = rng.uniform();
  for (double& x : b) x = rng.uniform();
  EXPECT_LT(ks_statistic(a, b), 0.012);
}

TEST(KsStatistic, TiesHandled) {
  const std::vector<double> a = {1.0, 1.0, 2.0, 2.0};
  const std::vector<double> b = {1.0, 2.0};
  EXPECT_EQ(ks_statistic(a, b), 0.0);
}

}  // namespace
}  // namespace bkm
