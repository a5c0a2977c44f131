#pragma once

// Statistical and numerical checks tying the samplers, the exact densities
// and the asymptotic formulas together. Each check reports the measured
// quantities alongside its pass/fail verdict.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "bkm/montecarlo.hpp"

namespace bkm {

enum class VerifyLevel { Quick, Full };

struct CheckResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  int workers = 1;
  /// Forwarded to every triangular-matrix draw.
  SamplerOptions sampler{};
  /// Gaussianity thresholds for the standardized entropy at N = 70.
  double max_abs_skewness = 0.15;
  double max_abs_excess_kurtosis = 0.3;
};

class Verifier {
 public:
  explicit Verifier(VerifyOptions options = {});

  /// w e^w = z to 1e-12 relative on 1000 points around the branch point,
  /// along both sides of the cut and across the plane.
  CheckResult lambert_round_trip() const;
  /// Closed-form C_1, C_2, C_3.
  CheckResult normalization_constants() const;
  /// KS distances between the triangular sampler and the rejection oracle
  /// for the smallest eigenvalue and the smallest spacing at one N.
  CheckResult oracle_ks(int n) const;

  CheckResult mean_entropy_bkm();        // 1
  CheckResult ensemble_ordering();       // 2
  CheckResult oracle_agreement() const;  // 3
  CheckResult normalization_integrals() const;  // 4
  CheckResult asymptotic_marginal() const;      // 5
  CheckResult mellin_moments();          // 6
  CheckResult metric_identities() const;  // 7
  CheckResult entropy_concentration();   // 8
  CheckResult min_eigenvalue_trend();    // 9
  CheckResult bipartite_reduction();     // 10

  /// Quick: oracle KS at N = 2, constants, Lambert round trips.
  /// Full: the quick set followed by checks 1 to 10.
  std::vector<CheckResult> run(VerifyLevel level,
                               const std::function<void(const CheckResult&)>& on_result = {});

  const VerifyOptions& options() const noexcept { return options_; }

 private:
  using BatchKey = std::tuple<int, int, std::uint64_t, bool>;

  const BatchResult& batch(EnsembleKind kind, int n, std::uint64_t samples, bool bipartite = false);
  std::uint64_t derived_seed(std::uint64_t salt) const;

  VerifyOptions options_;
  std::map<BatchKey, BatchResult> cache_;
};

}  // namespace bkm
