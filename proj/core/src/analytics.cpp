#include "bkm/analytics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "bkm/error.hpp"

namespace bkm {

namespace {

using Complex = std::complex<double>;

constexpr double kInvE = 0.36787944117144233;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 100;
constexpr double kLogFormThreshold = 1e100;
constexpr double kRoundTripTolerance = 1e-12;

// W near -1/e in powers of p = +-sqrt(2(e z + 1)).
Complex branch_point_series(Complex p) {
  return -1.0 +
         p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0 +
                                                              p * (769.0 / 17280.0)))));
}

Complex log_guess(Complex z, int branch) {
  const Complex l = std::log(z) + Complex(0.0, 2.0 * std::numbers::pi * branch);
  return l - std::log(l);
}

// Principal-branch range: |Im w| < pi and right of the curve -y cot y + iy.
// W_0 also keeps the sign of Im z, which picks the upper side on the cut.
bool in_principal_range(Complex z, Complex w) {
  const double y = w.imag();
  const double slack = 4.0 * kEps * std::abs(w);
  if (z.imag() >= 0.0 ? y < -slack : y > slack) return false;
  if (std::abs(y) >= std::numbers::pi) return false;
  if (y == 0.0) return w.real() >= -1.0 - 1e-8;
  return w.real() > -y / std::tan(y) - 1e-8;
}

std::optional<Complex> halley(Complex z, Complex w) {
  for (int it = 0; it < kMaxIterations; ++it) {
    const Complex ew = std::exp(w);
    const Complex wew = w * ew;
    const Complex f = wew - z;
    if (std::abs(f) <= 2.0 * kEps * std::max(std::abs(z), std::abs(wew))) return w;
    const Complex wp1 = w + 1.0;
    if (wp1 == 0.0) return w;
    const Complex dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= dw;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return std::nullopt;
    if (std::abs(dw) <= 4.0 * kEps * std::abs(w)) return w;
  }
  return std::nullopt;
}

// Newton on w + Log w = log_z for large |w|.
std::optional<Complex> log_form_newton(Complex log_z, Complex w) {
  for (int it = 0; it < kMaxIterations; ++it) {
    const Complex g = w + std::log(w) - log_z;
    const Complex dw = g / (1.0 + 1.0 / w);
    w -= dw;
    if (std::abs(dw) <= 4.0 * kEps * std::abs(w)) return w;
  }
  return std::nullopt;
}

bool round_trip_ok(Complex z, Complex w) {
  return std::abs(w * std::exp(w) - z) <= kRoundTripTolerance * std::abs(z);
}

}  // namespace

Complex lambert_w(Complex z, int branch) {
  if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
  if (z == 0.0) {
    if (branch == 0) return 0.0;
    throw Error(Errc::InvalidArgument, "lambert_w: z = 0 is singular off the principal branch");
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(Errc::InvalidArgument, "lambert_w: non-finite argument");
  }

  if (std::abs(z) > kLogFormThreshold) {
    const Complex log_z = std::log(z) + Complex(0.0, 2.0 * std::numbers::pi * branch);
    if (auto w = log_form_newton(log_z, log_guess(z, branch))) return *w;
    throw Error(Errc::NoConvergence, "lambert_w: Newton iteration cap reached");
  }

  const Complex near = z + kInvE;
  if (z == Complex(-kInvE, 0.0) && (branch == 0 || branch == -1)) return -1.0;

  std::array<Complex, 4> guesses{};
  std::size_t count = 0;
  const Complex p = std::sqrt(2.0 * std::numbers::e * near);
  if (std::abs(near) < 0.3) {
    if (branch == 0) guesses[count++] = branch_point_series(p);
    if (branch == -1 && z.imag() >= 0.0) guesses[count++] = branch_point_series(-p);
    if (branch == 1 && z.imag() < 0.0) guesses[count++] = branch_point_series(-p);
  }
  if (branch == 0) {
    if (std::abs(z) < 0.3) guesses[count++] = z * (1.0 + z * (-1.0 + 1.5 * z));
    if (std::abs(1.0 + z) > 0.3 && std::abs(z) < 3.0) {  // Winitzki
      const Complex l = std::log(1.0 + z);
      guesses[count++] = l * (1.0 - std::log(1.0 + l) / (2.0 + l));
    }
  }
  guesses[count++] = log_guess(z, branch);
  if (branch == 0 && count < guesses.size()) guesses[count++] = -1.0 + p - p * p / 3.0;

  for (std::size_t i = 0; i < count; ++i) {
    const auto w = halley(z, guesses[i]);
    if (!w || !round_trip_ok(z, *w)) continue;
    if (branch == 0 && !in_principal_range(z, *w)) continue;
    return *w;
  }
  throw Error(Errc::NoConvergence, "lambert_w: no starting point converged on the requested branch");
}

Complex lambert_w0_negative_exp(double u) {
  if (u < 200.0) return lambert_w(Complex(-std::exp(u), 0.0), 0);
  const Complex log_z(u, std::numbers::pi);
  if (auto w = log_form_newton(log_z, log_z - std::log(log_z))) return *w;
  throw Error(Errc::NoConvergence, "lambert_w0_negative_exp: Newton iteration cap reached");
}

double marginal_weight_log(double u) {
  if (!(u > -1.0)) return 0.0;
  const Complex w = lambert_w0_negative_exp(u);
  // -Im(1/w) / pi, written to avoid forming |w|^2.
  const double modulus = std::abs(w);
  return (w.imag() / modulus) / modulus / std::numbers::pi;
}

double marginal_density_asymptotic(double x) {
  if (!(x > 0.0) || !(x < kSupportEdge)) return 0.0;
  return marginal_weight_log(std::numbers::ln2 - std::log(x)) / x;
}

double mellin_marginal(double s) {
  if (!(s >= 1.0)) {
    throw Error(Errc::InvalidArgument, "mellin_marginal: defined for s >= 1 only");
  }
  const double a = s - 1.0;
  const double a_log_a = a == 0.0 ? 0.0 : a * std::log(a);
  return std::exp(a * std::numbers::ln2 + a_log_a - std::log(s) - std::lgamma(s));
}

EntropyPrediction mean_entropy(EnsembleKind kind, int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "mean_entropy: N < 1");
  const double nd = n;
  switch (kind) {
    case EnsembleKind::BKM:
      return {std::log(nd) - std::numbers::egamma - std::numbers::ln2 + 0.5, false};
    case EnsembleKind::HS:
      return {std::log(nd) - 0.5, false};
    case EnsembleKind::BH:
      return {digamma(1.0 + 0.5 * nd * nd) - digamma(nd + 0.5), true};
  }
  throw Error(Errc::InvalidArgument, "mean_entropy: unknown ensemble");
}

double digamma(double x) {
  if (!(x > 0.0)) throw Error(Errc::NonPositive, "digamma: x must be positive");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  // B_{2k} / (2k) for k = 1..7.
  const double series =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 -
                                              inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
  return shift + std::log(x) - 0.5 / x - series;
}

double min_eig_scaling(int n) {
  if (n < 2) throw Error(Errc::InvalidArgument, "min_eig_scaling: N < 2");
  return 2.0 * std::exp(-static_cast<double>(n)) / n;
}

}  // namespace bkm
