#pragma once

// Exact finite-N eigenvalue densities: the fixed-trace BKM joint density,
// its normalization constant, the Laguerre-weighted Muttalib-Borodin
// density it descends from, and an exact rejection sampler for N = 2, 3
// that is independent of the triangular-matrix construction.

#include <span>
#include <vector>

#include "bkm/rng.hpp"

namespace bkm {

/// Strictly positive vector summing to one (within 1e-12). No ordering.
class SimplexPoint {
 public:
  static SimplexPoint from(std::vector<double> r);

  int dim() const noexcept { return static_cast<int>(r_.size()); }
  std::span<const double> values() const noexcept { return r_; }
  double operator[](std::size_t k) const { return r_.at(k); }

 private:
  explicit SimplexPoint(std::vector<double> r) : r_(std::move(r)) {}
  std::vector<double> r_;
};

struct MBParams {
  /// theta >= 0 (0 selects the logarithmic pair interaction), alpha > -1.
  MBParams(double theta, double alpha);

  double theta;
  double alpha;
};

/// ln C_N = ln Gamma(N^2/2) - (N/2) ln pi - sum_{k=1}^N ln Gamma(k+1).
double log_norm_const(int n);

/// ln C_{theta,alpha} = -sum_{k=1}^N [ln Gamma(k+1) + ln Gamma(theta(k-1) + alpha + 1)].
double log_mb_norm_const(int n, const MBParams& params);

/// Unnormalized log weight on the simplex:
/// -1/2 sum ln r_k + sum_{nu<mu} ln[(r_mu - r_nu) ln(r_mu / r_nu)], evaluated
/// on sorted values. Returns -infinity when two entries are closer than
/// 1e-14 (the density vanishes there).
double log_bkm_weight(std::span<const double> r);

/// ln C_N + log_bkm_weight(r).
double log_joint_density_bkm(const SimplexPoint& r);

/// ln P_{theta,alpha}(s) on the positive orthant including ln C_{theta,alpha};
/// theta = 0 uses the limit (s_mu^theta - s_nu^theta)/theta -> ln(s_mu/s_nu).
double log_joint_density_mb(std::span<const double> s, const MBParams& params);

/// Exact sampler for the BKM eigenvalue law at N = 2 or 3.
///
/// Proposals are Dirichlet(1/4, ..., 1/4); the target/proposal ratio
/// prod r_k^{1/4} prod_{nu<mu} (r_mu - r_nu) ln(r_mu/r_nu) is bounded on the
/// simplex and is divided by an envelope found once by grid search times a
/// safety factor.
class BkmSpectrumOracle {
 public:
  static constexpr double kProposalShape = 0.25;

  explicit BkmSpectrumOracle(int n, double safety = 1.5);

  int dim() const noexcept { return n_; }
  double envelope() const noexcept { return envelope_; }

  /// Acceptance probability of a proposal; BoundViolation if above one.
  double acceptance_ratio(std::span<const double> r) const;

  SimplexPoint sample(RngStream& rng) const;

 private:
  int n_;
  double envelope_;
};

/// Uses a shared oracle per N (built on first use).
SimplexPoint rejection_sample_bkm_spectrum(int n, RngStream& rng);

}  // namespace bkm
