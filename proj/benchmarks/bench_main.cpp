#include <complex>

#include <benchmark/benchmark.h>

#include "bkm/analytics.hpp"
#include "bkm/linalg.hpp"
#include "bkm/metric.hpp"
#include "bkm/rng.hpp"
#include "bkm/samplers.hpp"

namespace {

template <bkm::EnsembleKind Kind>
void BM_SampleSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  bkm::RngStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(bkm::sample_spectrum(Kind, n, rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK_TEMPLATE(BM_SampleSpectrum, bkm::EnsembleKind::BKM)->RangeMultiplier(2)->Range(2, 128);
BENCHMARK_TEMPLATE(BM_SampleSpectrum, bkm::EnsembleKind::HS)->RangeMultiplier(2)->Range(2, 128);
BENCHMARK_TEMPLATE(BM_SampleSpectrum, bkm::EnsembleKind::BH)->RangeMultiplier(2)->Range(2, 128);

void BM_SampleState(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  bkm::RngStream rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(bkm::sample_state(bkm::EnsembleKind::BKM, n, rng));
}
BENCHMARK(BM_SampleState)->RangeMultiplier(4)->Range(2, 128);

void BM_PureBipartite(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  bkm::RngStream rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(bkm::sample_pure_bipartite(n, rng));
}
BENCHMARK(BM_PureBipartite)->RangeMultiplier(4)->Range(2, 32);

void BM_EigHermitian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  bkm::RngStream rng(4);
  const bkm::ComplexMatrix g = bkm::sample_ginibre(n, rng);
  const bkm::ComplexMatrix h = g * g.adjoint();
  for (auto _ : state) benchmark::DoNotOptimize(bkm::eig_hermitian(h));
}
BENCHMARK(BM_EigHermitian)->RangeMultiplier(2)->Range(2, 256);

void BM_LineElement(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  bkm::RngStream rng(5);
  const bkm::DensityMatrix rho = bkm::sample_state(bkm::EnsembleKind::HS, n, rng);
  const bkm::ComplexMatrix g = bkm::sample_ginibre(n, rng);
  bkm::ComplexMatrix d = 0.5 * (g + g.adjoint());
  d -= (d.trace() / static_cast<double>(n)) * bkm::ComplexMatrix::Identity(n, n);
  const bkm::TangentMatrix delta = bkm::TangentMatrix::from(d);
  for (auto _ : state) benchmark::DoNotOptimize(bkm::bkm_line_element(rho, delta));
}
BENCHMARK(BM_LineElement)->RangeMultiplier(4)->Range(2, 64);

void BM_LambertW(benchmark::State& state) {
  const int branch = static_cast<int>(state.range(0));
  std::complex<double> z(-0.2, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bkm::lambert_w(z, branch));
    z += std::complex<double>(1e-9, 0.0);
  }
}
BENCHMARK(BM_LambertW)->Arg(-1)->Arg(0)->Arg(1);

void BM_MarginalDensity(benchmark::State& state) {
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bkm::marginal_density_asymptotic(x));
    x = x < 5.0 ? x + 1e-3 : 0.01;
  }
}
BENCHMARK(BM_MarginalDensity);

}  // namespace

BENCHMARK_MAIN();
