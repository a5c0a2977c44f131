#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bkm/linalg.hpp"

namespace bkm {

/// -sum r ln r with 0 ln 0 = 0.
double entropy(std::span<const double> r);
double entropy(const Spectrum& spectrum);

/// sum r^2.
double purity(std::span<const double> r);
double purity(const Spectrum& spectrum);

/// Streaming mean / second central moment / extrema. Two accumulators merge
/// into the accumulator of the concatenated stream (Chan et al. update).
class RunningMoments {
 public:
  void push(double x);
  void merge(const RunningMoments& other);

  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  double m2() const noexcept { return m2_; }
  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }
  /// Unbiased sample variance m2 / (count - 1); 0 for fewer than 2 values.
  double variance() const noexcept;
  double stddev() const noexcept;
  /// sqrt(variance / count).
  double stderr_mean() const noexcept;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

/// Per-state observables accumulated over a run.
struct SampleSummary {
  RunningMoments entropy;
  RunningMoments purity;
  RunningMoments r_min;
  RunningMoments r_max;

  void add(const Spectrum& spectrum);
  void merge(const SampleSummary& other);
  std::uint64_t count() const noexcept { return entropy.count(); }
};

/// (x - mean) / sample stddev. Throws InvalidArgument for fewer than two
/// values and ZeroVariance for a constant input.
std::vector<double> standardize(std::span<const double> values);

struct ShapeStatistics {
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

/// Moment-based skewness m3 / m2^{3/2} and excess kurtosis m4 / m2^2 - 3.
ShapeStatistics shape_statistics(std::span<const double> values);

/// Binned counts over ascending edges. Values outside [front, back] go to
/// underflow / overflow; counts + underflow + overflow = total.
class Histogram {
 public:
  explicit Histogram(std::vector<double> edges);
  static Histogram uniform(double lo, double hi, int bins);

  void add(double x);
  void merge(const Histogram& other);

  int bins() const noexcept { return static_cast<int>(counts_.size()); }
  const std::vector<double>& edges() const noexcept { return edges_; }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t underflow() const noexcept { return underflow_; }
  std::uint64_t overflow() const noexcept { return overflow_; }

  double width(int bin) const { return edges_.at(bin + 1) - edges_.at(bin); }
  double center(int bin) const { return 0.5 * (edges_.at(bin) + edges_.at(bin + 1)); }
  /// counts / (total * width); integrates to the in-range fraction (1 when
  /// nothing fell outside).
  std::vector<double> density() const;

 private:
  std::vector<double> edges_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  std::uint64_t underflow_ = 0;
  std::uint64_t overflow_ = 0;
};

/// Pools every eigenvalue of every spectrum, rescaled to x = N r, into
/// `bins` uniform bins over [0, x_max]. All spectra must share N
/// (DimMismatch otherwise).
Histogram empirical_rescaled_marginal(std::span<const Spectrum> spectra, int bins,
                                      double x_max);
Histogram empirical_rescaled_marginal(std::span<const Spectrum> spectra, int bins);

/// Two-sample Kolmogorov-Smirnov distance sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

}  // namespace bkm
