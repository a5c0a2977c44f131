#include "bkm/montecarlo.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "bkm/error.hpp"

namespace bkm {

namespace {

struct Slice {
  std::uint64_t begin;
  std::uint64_t end;
};

Slice slice_for(std::uint64_t samples, int workers, int w) {
  const std::uint64_t base = samples / workers;
  const std::uint64_t extra = samples % workers;
  const std::uint64_t uw = static_cast<std::uint64_t>(w);
  const std::uint64_t begin = uw * base + std::min(uw, extra);
  return {begin, begin + base + (uw < extra ? 1 : 0)};
}

Spectrum draw_spectrum(const BatchConfig& config, RngStream& rng) {
  if (config.bipartite) {
    return sample_pure_bipartite(config.dim, rng, config.options).reduced.spectrum();
  }
  return sample_spectrum(config.kind, config.dim, rng, config.options);
}

// Runs body(w, slice) on `workers` threads (inline for one) and rethrows
// the first failure by worker index.
template <typename Body>
void parallel_slices(const BatchConfig& config, Body&& body) {
  const int workers = config.workers;
  if (workers == 1) {
    body(0, slice_for(config.samples, 1, 0));
    return;
  }
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        body(w, slice_for(config.samples, workers, w));
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

}  // namespace

void validate(const BatchConfig& config) {
  if (config.samples < 1) throw Error(Errc::InvalidArgument, "samples must be >= 1");
  if (config.dim < 1) throw Error(Errc::InvalidArgument, "dim must be >= 1");
  if (config.workers < 1) throw Error(Errc::InvalidArgument, "workers must be >= 1");
  if (config.bipartite && config.kind != EnsembleKind::BKM) {
    throw Error(Errc::InvalidArgument, "bipartite sampling is defined for the bkm ensemble only");
  }
}

BatchResult run_batch(const BatchConfig& config) {
  validate(config);
  BatchResult result;
  result.records.resize(config.samples);
  std::vector<SampleSummary> partial(config.workers);
  parallel_slices(config, [&](int w, Slice slice) {
    RngStream rng(config.seed, static_cast<std::uint64_t>(w));
    SampleSummary& summary = partial[w];
    for (std::uint64_t i = slice.begin; i < slice.end; ++i) {
      const Spectrum s = draw_spectrum(config, rng);
      summary.add(s);
      result.records[i] = {i, entropy(s), purity(s), s.min(), s.max()};
    }
  });
  for (const auto& p : partial) result.summary.merge(p);
  return result;
}

std::vector<Spectrum> collect_spectra(const BatchConfig& config) {
  validate(config);
  std::vector<Spectrum> spectra(config.samples);
  parallel_slices(config, [&](int w, Slice slice) {
    RngStream rng(config.seed, static_cast<std::uint64_t>(w));
    for (std::uint64_t i = slice.begin; i < slice.end; ++i) spectra[i] = draw_spectrum(config, rng);
  });
  return spectra;
}

}  // namespace bkm
