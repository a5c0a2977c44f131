#include "bkm/densities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bkm/error.hpp"

namespace bkm {

namespace {

constexpr double kDegenerateGap = 1e-14;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> sorted_copy(std::span<const double> r) {
  std::vector<double> v(r.begin(), r.end());
  std::sort(v.begin(), v.end());
  return v;
}

// ln of prod r^{1/4} prod (r_mu - r_nu) ln(r_mu/r_nu), sorted input.
double log_ratio_sorted(const std::vector<double>& r) {
  double out = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0)) return kNegInf;
    out += (0.5 - BkmSpectrumOracle::kProposalShape) * std::log(r[i]);
    for (std::size_t j = i + 1; j < r.size(); ++j) {
      const double gap = r[j] - r[i];
      if (gap < kDegenerateGap) return kNegInf;
      out += std::log(gap) + std::log(std::log1p(gap / r[i]));
    }
  }
  return out;
}

double grid_max_ratio(int n) {
  double best = 0.0;
  if (n == 2) {
    constexpr int kSteps = 20000;
    for (int i = 1; i < kSteps; ++i) {
      const double a = static_cast<double>(i) / kSteps;
      best = std::max(best, std::exp(log_ratio_sorted(sorted_copy(std::vector{a, 1.0 - a}))));
    }
  } else {
    constexpr int kSteps = 600;
    for (int i = 1; i < kSteps; ++i) {
      for (int j = 1; i + j < kSteps; ++j) {
        const double a = static_cast<double>(i) / kSteps;
        const double b = static_cast<double>(j) / kSteps;
        best = std::max(best,
                        std::exp(log_ratio_sorted(sorted_copy(std::vector{a, b, 1.0 - a - b}))));
      }
    }
  }
  return best;
}

}  // namespace

SimplexPoint SimplexPoint::from(std::vector<double> r) {
  if (r.empty()) throw Error(Errc::InvalidArgument, "SimplexPoint: empty");
  double total = 0.0;
  for (double x : r) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw Error(Errc::InvalidArgument, "SimplexPoint: entries must be positive");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(Errc::NotNormalized, "SimplexPoint: sum " + std::to_string(total));
  }
  return SimplexPoint(std::move(r));
}

MBParams::MBParams(double theta_, double alpha_) : theta(theta_), alpha(alpha_) {
  if (!(theta >= 0.0) || !(alpha > -1.0)) {
    throw Error(Errc::InvalidArgument, "MBParams: need theta >= 0 and alpha > -1");
  }
}

double log_norm_const(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "log_norm_const: N < 1");
  const double nd = n;
  double out = std::lgamma(0.5 * nd * nd) - 0.5 * nd * std::log(std::numbers::pi);
  for (int k = 1; k <= n; ++k) out -= std::lgamma(k + 1.0);
  return out;
}

double log_mb_norm_const(int n, const MBParams& params) {
  if (n < 1) throw Error(Errc::InvalidArgument, "log_mb_norm_const: N < 1");
  double out = 0.0;
  for (int k = 1; k <= n; ++k) {
    out -= std::lgamma(k + 1.0) + std::lgamma(params.theta * (k - 1) + params.alpha + 1.0);
  }
  return out;
}

double log_bkm_weight(std::span<const double> r) {
  const std::vector<double> v = sorted_copy(r);
  if (v.empty() || !(v.front() > 0.0)) {
    throw Error(Errc::InvalidArgument, "log_bkm_weight: entries must be positive");
  }
  double out = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out -= 0.5 * std::log(v[i]);
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const double gap = v[j] - v[i];
      if (gap < kDegenerateGap) return kNegInf;
      out += std::log(gap) + std::log(std::log1p(gap / v[i]));
    }
  }
  return out;
}

double log_joint_density_bkm(const SimplexPoint& r) {
  return log_norm_const(r.dim()) + log_bkm_weight(r.values());
}

double log_joint_density_mb(std::span<const double> s, const MBParams& params) {
  const std::vector<double> v = sorted_copy(s);
  if (v.empty() || !(v.front() > 0.0)) {
    throw Error(Errc::InvalidArgument, "log_joint_density_mb: entries must be positive");
  }
  double out = log_mb_norm_const(static_cast<int>(v.size()), params);
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += params.alpha * std::log(v[i]) - v[i];
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const double gap = v[j] - v[i];
      if (gap < kDegenerateGap) return kNegInf;
      const double log_ratio = std::log1p(gap / v[i]);
      // (s_mu^theta - s_nu^theta)/theta = s_nu^theta expm1(theta ln(s_mu/s_nu)) / theta
      const double interaction =
          params.theta == 0.0
              ? log_ratio
              : std::pow(v[i], params.theta) * std::expm1(params.theta * log_ratio) / params.theta;
      out += std::log(gap) + std::log(interaction);
    }
  }
  return out;
}

BkmSpectrumOracle::BkmSpectrumOracle(int n, double safety) : n_(n) {
  if (n != 2 && n != 3) {
    throw Error(Errc::InvalidArgument, "BkmSpectrumOracle: only N = 2 or 3 is supported");
  }
  if (!(safety >= 1.0)) throw Error(Errc::InvalidArgument, "BkmSpectrumOracle: safety < 1");
  envelope_ = safety * grid_max_ratio(n);
}

double BkmSpectrumOracle::acceptance_ratio(std::span<const double> r) const {
  const double ratio = std::exp(log_ratio_sorted(sorted_copy(r))) / envelope_;
  if (ratio > 1.0) {
    throw Error(Errc::BoundViolation,
                "rejection envelope exceeded: ratio " + std::to_string(ratio));
  }
  return ratio;
}

SimplexPoint BkmSpectrumOracle::sample(RngStream& rng) const {
  std::vector<double> r(static_cast<std::size_t>(n_));
  for (;;) {
    double total = 0.0;
    for (double& x : r) {
      x = rng.gamma(kProposalShape);
      total += x;
    }
    if (!(total > 0.0)) continue;
    for (double& x : r) x /= total;
    if (std::any_of(r.begin(), r.end(), [](double x) { return !(x > 0.0); })) continue;
    if (rng.uniform() < acceptance_ratio(r)) return SimplexPoint::from(r);
  }
}

SimplexPoint rejection_sample_bkm_spectrum(int n, RngStream& rng) {
  static const BkmSpectrumOracle oracle2(2);
  static const BkmSpectrumOracle oracle3(3);
  if (n == 2) return oracle2.sample(rng);
  if (n == 3) return oracle3.sample(rng);
  throw Error(Errc::InvalidArgument, "rejection_sample_bkm_spectrum: only N = 2 or 3");
}

}  // namespace bkm
