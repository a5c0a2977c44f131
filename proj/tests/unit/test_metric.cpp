#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bkm/error.hpp"
#include "bkm/metric.hpp"
#include "bkm/samplers.hpp"

namespace bkm {
namespace {

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

ComplexMatrix random_tangent(int n, RngStream& rng) {
  const ComplexMatrix g = sample_ginibre(n, rng);
  ComplexMatrix h = 0.5 * (g + g.adjoint());
  h -= (h.trace() / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
  return h / h.norm();
}

// Full-rank state with eigenvalues bounded below by 1/(2n).
ComplexMatrix random_interior_state(int n, RngStream& rng) {
  return 0.5 * sample_state(EnsembleKind::HS, n, rng).matrix() +
         0.5 * ComplexMatrix::Identity(n, n) / static_cast<double>(n);
}

TEST(BkmKernel, OffDiagonalValue) {
  EXPECT_NEAR(bkm_kernel(0.2, 0.8), (std::log(0.2) - std::log(0.8)) / (0.2 - 0.8), 1e-15);
  EXPECT_DOUBLE_EQ(bkm_kernel(0.3, 0.6), bkm_kernel(0.6, 0.3));
}

TEST(BkmKernel, DegenerateLimit) {
  for (double a : {1e-6, 0.01, 0.3, 1.0}) {
    EXPECT_NEAR(bkm_kernel(a, a) * a, 1.0, 1e-15);
    EXPECT_NEAR(bkm_kernel(a, a + 1e-9 * a) * a, 1.0, 1e-6);
    EXPECT_NEAR(bkm_kernel(a, a + 1e-9) * a, 1.0, 1e-6 + 1e-9 / a);
  }
}

TEST(BkmKernel, SeriesSwitchIsContinuous) {
  // Just inside and just outside |a - b| = 1e-6 m.
  const double m = 0.25;
  for (double f : {0.999e-6, 1.001e-6, 1e-4}) {
    const double a = m * (1.0 + 0.5 * f);
    const double b = m * (1.0 - 0.5 * f);
    const double d = a - b;
    // Next term of the expansion is O(d^4 / m^5).
    const double reference = 1.0 / m + d * d / (12.0 * m * m * m) + std::pow(d, 4) / (80.0 * std::pow(m, 5));
    EXPECT_NEAR(bkm_kernel(a, b) / reference, 1.0, 1e-10) << f;
  }
}

TEST(LineElement, MaximallyMixedQubit) {
  const double eps = 1e-3;
  const DensityMatrix rho = DensityMatrix::from_hermitian(diag2(0.5, 0.5));
  const TangentMatrix d = TangentMatrix::from(diag2(eps, -eps));
  EXPECT_NEAR(bkm_line_element(rho, d), 4.0 * eps * eps, 1e-18);
}

TEST(LineElement, ZeroTangent) {
  const DensityMatrix rho = DensityMatrix::from_hermitian(diag2(0.3, 0.7));
  EXPECT_EQ(bkm_line_element(rho, TangentMatrix::from(ComplexMatrix::Zero(2, 2))), 0.0);
}

TEST(LineElement, MatchesEntropyHessian) {
  RngStream rng(31);
  const double h = 1e-4;
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix base = random_interior_state(3, rng);
    const ComplexMatrix delta = random_tangent(3, rng);
    const double ds2 = bkm_line_element(DensityMatrix::from_hermitian(base), TangentMatrix::from(delta));
    auto s = [&](double t) { return von_neumann_entropy(DensityMatrix::from_hermitian(base + t * delta)); };
    const double hessian = -(s(h) - 2.0 * s(0.0) + s(-h)) / (h * h);
    EXPECT_NEAR(hessian / ds2, 1.0, 1e-5);
  }
}

TEST(LineElement, PositiveAndUnitarilyCovariant) {
  RngStream rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix base = random_interior_state(4, rng);
    const ComplexMatrix delta = random_tangent(4, rng);
    const ComplexMatrix v = sample_haar_unitary(4, rng);
    const double ds2 = bkm_line_element(DensityMatrix::from_hermitian(base), TangentMatrix::from(delta));
    const double rotated = bkm_line_element(DensityMatrix::from_hermitian(v * base * v.adjoint()),
                                            TangentMatrix::from(v * delta * v.adjoint()));
    EXPECT_GT(ds2, 0.0);
    EXPECT_NEAR(rotated, ds2, 1e-10);
  }
}

TEST(LineElement, SingularStateRejected) {
  const DensityMatrix pure = DensityMatrix::from_hermitian(diag2(1.0, 0.0));
  const TangentMatrix d = TangentMatrix::from(diag2(0.1, -0.1));
  try {
    bkm_line_element(pure, d);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SingularState);
  }
}

TEST(TangentMatrix, RejectsTraceAndNonHermitian) {
  EXPECT_THROW(TangentMatrix::from(diag2(0.1, 0.1)), Error);
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(TangentMatrix::from(m), Error);
}

TEST(RelativeEntropy, SelfIsZero) {
  RngStream rng(33);
  const DensityMatrix rho = DensityMatrix::from_hermitian(random_interior_state(4, rng));
  EXPECT_NEAR(relative_entropy(rho, rho), 0.0, 1e-12);
}

TEST(RelativeEntropy, ClassicalCase) {
  const DensityMatrix rho = DensityMatrix::from_hermitian(diag2(1.0, 0.0));
  const DensityMatrix sigma = DensityMatrix::from_hermitian(diag2(0.5, 0.5));
  EXPECT_NEAR(relative_entropy(rho, sigma), std::numbers::ln2, 1e-14);
}

TEST(RelativeEntropy, SupportViolation) {
  const DensityMatrix rho = DensityMatrix::from_hermitian(diag2(0.5, 0.5));
  const DensityMatrix sigma = DensityMatrix::from_hermitian(diag2(1.0, 0.0));
  try {
    relative_entropy(rho, sigma);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SupportViolation);
  }
}

TEST(RelativeEntropy, NonNegative) {
  RngStream rng(34);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix a = DensityMatrix::from_hermitian(random_interior_state(3, rng));
    const DensityMatrix b = DensityMatrix::from_hermitian(random_interior_state(3, rng));
    EXPECT_GE(relative_entropy(a, b), -1e-14);
  }
}

TEST(RelativeEntropy, MixedDerivativeIsMinusLineElement) {
  RngStream rng(35);
  const double h = 1e-4;
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix base = random_interior_state(3, rng);
    const ComplexMatrix delta = random_tangent(3, rng);
    const double ds2 = bkm_line_element(DensityMatrix::from_hermitian(base), TangentMatrix::from(delta));
    auto at = [&](double t) { return DensityMatrix::from_hermitian(base + t * delta); };
    auto d = [&](double t, double s) { return relative_entropy(at(t), at(s)); };
    const double cross = (d(h, h) - d(h, -h) - d(-h, h) + d(-h, -h)) / (4.0 * h * h);
    EXPECT_NEAR(-cross / ds2, 1.0, 1e-4);
  }
}

TEST(MixingLoss, ZeroAndConcavity) {
  RngStream rng(36);
  const DensityMatrix rho = DensityMatrix::from_hermitian(random_interior_state(3, rng));
  EXPECT_NEAR(mixing_information_loss(rho, TangentMatrix::from(ComplexMatrix::Zero(3, 3))), 0.0, 1e-15);
  for (int i = 0; i < 50; ++i) {
    const TangentMatrix d = TangentMatrix::from(0.2 * random_tangent(3, rng));
    EXPECT_GE(mixing_information_loss(rho, d), 0.0);
  }
}

TEST(MixingLoss, QuadraticScaling) {
  RngStream rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = DensityMatrix::from_hermitian(random_interior_state(3, rng));
    const ComplexMatrix delta = random_tangent(3, rng);
    const double ds2 = bkm_line_element(rho, TangentMatrix::from(delta));
    const double eps = 1e-3;
    const double loss = mixing_information_loss(rho, TangentMatrix::from(eps * delta));
    EXPECT_NEAR(loss / (eps * eps * ds2 / 8.0), 1.0, 1e-3);
  }
}

TEST(MixingLoss, InvalidMixture) {
  const DensityMatrix rho = DensityMatrix::from_hermitian(diag2(0.9, 0.1));
  const TangentMatrix d = TangentMatrix::from(diag2(-0.5, 0.5));
  try {
    mixing_information_loss(rho, d);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidMixture);
  }
}

TEST(Metric, DimensionMismatch) {
  const DensityMatrix rho = DensityMatrix::from_hermitian(diag2(0.5, 0.5));
  const TangentMatrix d = TangentMatrix::from(ComplexMatrix::Zero(3, 3));
  EXPECT_THROW(bkm_line_element(rho, d), Error);
}

}  // namespace
}  // namespace bkm
