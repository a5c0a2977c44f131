#pragma once

// Closed-form large-N predictions for the entropy-metric ensemble and the
// special functions they need.

#include <complex>
#include <numbers>

#include "bkm/ensemble.hpp"

namespace bkm {

/// Right edge 2e of the asymptotic rescaled-eigenvalue support.
inline constexpr double kSupportEdge = 2.0 * std::numbers::e;

/// Branch `branch` of the Lambert W function (w e^w = z) by Halley
/// iteration; |z| > 1e100 switches to Newton on w + ln w = ln z + 2 pi i k.
///
/// A zero imaginary part is treated as +0, so on the cut z < -1/e the
/// principal branch returns the value with Im w > 0. Throws InvalidArgument
/// for z = 0 off the principal branch and NoConvergence after 100 steps.
std::complex<double> lambert_w(std::complex<double> z, int branch = 0);

/// W_0(-e^u) approached from above, for any real u >= -1, without forming
/// e^u when it would overflow.
std::complex<double> lambert_w0_negative_exp(double u);

/// Large-N density of a rescaled eigenvalue x = N r:
/// P(x) = -Im[1 / (pi x W(-2/x))] on (0, 2e], 0 elsewhere. Integrable
/// divergence ~ 1 / (x ln^2(2/x)) at the origin.
double marginal_density_asymptotic(double x);

/// x P(x) at x = 2 e^{-u}, i.e. the density of u = ln(2/x). Defined for all
/// u (0 below u = -1) and decays like 1/u^2, which makes it the natural
/// integrand for quadrature down to x -> 0.
double marginal_weight_log(double u);

/// Mellin transform int x^{s-1} P(x) dx = 2^{s-1} (s-1)^{s-1} / (s Gamma(s)).
/// The integral diverges for s < 1 (InvalidArgument); s = 1 gives 1.
double mellin_marginal(double s);

struct EntropyPrediction {
  double value;
  /// false: leading large-N terms only.
  bool exact;
};

/// Mean von Neumann entropy.
///   BKM: ln N - gamma - ln 2 + 1/2        (asymptotic)
///   HS:  ln N - 1/2                        (asymptotic, Page)
///   BH:  psi(1 + N^2/2) - psi(N + 1/2)     (exact)
EntropyPrediction mean_entropy(EnsembleKind kind, int n);

/// psi_0(x) for x > 0 (NonPositive otherwise): upward recurrence to x >= 6,
/// then the asymptotic series through x^{-14}.
double digamma(double x);

/// <r_min> ~ 2 e^{-N} / N.
double min_eig_scaling(int n);

}  // namespace bkm
