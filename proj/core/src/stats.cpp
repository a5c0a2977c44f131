#include "bkm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bkm/error.hpp"

namespace bkm {

double entropy(std::span<const double> r) {
  double s = 0.0;
  for (double p : r) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double entropy(const Spectrum& spectrum) { return entropy(spectrum.values()); }

double purity(std::span<const double> r) {
  double s = 0.0;
  for (double p : r) s += p * p;
  return s;
}

double purity(const Spectrum& spectrum) { return purity(spectrum.values()); }

void RunningMoments::push(double x) {
  ++count_;
  if (count_ == 1) {
    min_ = max_ = x;
  } else {
    min_ = std::min(min_, x);
    max_ = std::max(max_, x);
  }
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void RunningMoments::merge(const RunningMoments& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ = (na * mean_ + nb * other.mean_) / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  count_ += other.count_;
  min_ = std::min(min_, other.min_);
  max_ = std::max(max_, other.max_);
}

double RunningMoments::variance() const noexcept {
  return count_ < 2 ? 0.0 : std::max(0.0, m2_ / static_cast<double>(count_ - 1));
}

double RunningMoments::stddev() const noexcept { return std::sqrt(variance()); }

double RunningMoments::stderr_mean() const noexcept {
  return count_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(count_));
}

void SampleSummary::add(const Spectrum& spectrum) {
  entropy.push(bkm::entropy(spectrum));
  purity.push(bkm::purity(spectrum));
  r_min.push(spectrum.min());
  r_max.push(spectrum.max());
}

void SampleSummary::merge(const SampleSummary& other) {
  entropy.merge(other.entropy);
  purity.merge(other.purity);
  r_min.merge(other.r_min);
  r_max.merge(other.r_max);
}

std::vector<double> standardize(std::span<const double> values) {
  if (values.size() < 2) throw Error(Errc::InvalidArgument, "standardize: need >= 2 values");
  RunningMoments moments;
  for (double v : values) moments.push(v);
  const double sd = moments.stddev();
  if (!(sd > 0.0)) throw Error(Errc::ZeroVariance, "standardize: constant input");
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back((v - moments.mean()) / sd);
  return out;
}

ShapeStatistics shape_statistics(std::span<const double> values) {
  if (values.size() < 2) throw Error(Errc::InvalidArgument, "shape_statistics: need >= 2 values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const double n = static_cast<double>(values.size());
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) throw Error(Errc::ZeroVariance, "shape_statistics: constant input");
  return {m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0};
}

Histogram::Histogram(std::vector<double> edges) : edges_(std::move(edges)) {
  if (edges_.size() < 2) throw Error(Errc::InvalidArgument, "Histogram: need >= 2 edges");
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (!(edges_[i] > edges_[i - 1])) {
      throw Error(Errc::InvalidArgument, "Histogram: edges must be strictly ascending");
    }
  }
  counts_.assign(edges_.size() - 1, 0);
}

Histogram Histogram::uniform(double lo, double hi, int bins) {
  if (bins < 1 || !(hi > lo)) throw Error(Errc::InvalidArgument, "Histogram: bad uniform range");
  std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) edges[i] = lo + (hi - lo) * i / bins;
  edges.back() = hi;
  return Histogram(std::move(edges));
}

void Histogram::add(double x) {
  ++total_;
  if (x < edges_.front()) {
    ++underflow_;
    return;
  }
  if (x > edges_.back()) {
    ++overflow_;
    return;
  }
  // Bins are [e_i, e_{i+1}); the last bin also holds the upper edge.
  auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  auto bin = static_cast<std::size_t>(std::distance(edges_.begin(), it)) - 1;
  bin = std::min(bin, counts_.size() - 1);
  ++counts_[bin];
}

void Histogram::merge(const Histogram& other) {
  if (other.edges_ != edges_) throw Error(Errc::DimMismatch, "Histogram: edges differ");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  total_ += other.total_;
  underflow_ += other.underflow_;
  overflow_ += other.overflow_;
}

std::vector<double> Histogram::density() const {
  std::vector<double> out(counts_.size(), 0.0);
  if (total_ == 0) return out;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    out[i] = static_cast<double>(counts_[i]) /
             (static_cast<double>(total_) * (edges_[i + 1] - edges_[i]));
  }
  return out;
}

Histogram empirical_rescaled_marginal(std::span<const Spectrum> spectra, int bins,
                                      double x_max) {
  Histogram hist = Histogram::uniform(0.0, x_max, bins);
  if (spectra.empty()) return hist;
  const int n = spectra.front().dim();
  for (const Spectrum& s : spectra) {
    if (s.dim() != n) {
      throw Error(Errc::DimMismatch, "empirical_rescaled_marginal: dimension " +
                                         std::to_string(s.dim()) + " != " + std::to_string(n));
    }
    for (double r : s.values()) hist.add(n * r);
  }
  return hist;
}

Histogram empirical_rescaled_marginal(std::span<const Spectrum> spectra, int bins) {
  return empirical_rescaled_marginal(spectra, bins, 2.0 * std::numbers::e);
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(Errc::InvalidArgument, "ks_statistic: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

}  // namespace bkm
