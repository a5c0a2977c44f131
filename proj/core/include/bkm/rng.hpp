#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace bkm {

/// Deterministic random stream keyed by (seed, stream_id). Distinct stream
/// ids from one seed are used as independent per-worker streams.
///
/// Not thread-safe: one stream per task. Output is reproducible for a given
/// build (the std distributions are implementation-defined).
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Uniform on [0, 1).
  double uniform();
  /// Standard real Gaussian.
  double normal();
  /// Gamma(shape, scale 1).
  double gamma(double shape);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace bkm
