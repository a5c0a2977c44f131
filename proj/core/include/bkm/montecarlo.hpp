#pragma once

// Seeded batch sampling, partitioned over worker threads.

#include <cstdint>
#include <vector>

#include "bkm/ensemble.hpp"
#include "bkm/linalg.hpp"
#include "bkm/samplers.hpp"
#include "bkm/stats.hpp"

namespace bkm {

struct BatchConfig {
  EnsembleKind kind = EnsembleKind::BKM;
  int dim = 2;
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  SamplerOptions options{};
  /// Draw through the bipartite pure state and reduce (BKM only).
  bool bipartite = false;
};

struct SampleRecord {
  std::uint64_t index;
  double entropy;
  double purity;
  double r_min;
  double r_max;
};

struct BatchResult {
  /// Ordered by index.
  std::vector<SampleRecord> records;
  SampleSummary summary;
};

/// Throws InvalidArgument unless samples >= 1, dim >= 1, workers >= 1 and
/// bipartite implies BKM.
void validate(const BatchConfig& config);

/// Worker w owns a contiguous slice of the sample indices and draws from
/// RngStream(seed, w); worker summaries are merged in worker order. The
/// output depends only on (config, workers).
BatchResult run_batch(const BatchConfig& config);

/// Same partition and streams as run_batch, keeping the full spectra.
std::vector<Spectrum> collect_spectra(const BatchConfig& config);

}  // namespace bkm
