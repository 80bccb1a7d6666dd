#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include <rydberg/cavity.hpp>
#include <rydberg/eit.hpp>
#include <rydberg/estimation.hpp>
#include <rydberg/readout.hpp>
#include <rydberg/sigproc.hpp>

using namespace rydberg;

static void BM_Coherence(benchmark::State& state) {
  const AtomSystem sys;
  double dc = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(steady_state_coherence(sys, dc));
    dc += 1e-3;
  }
}
BENCHMARK(BM_Coherence);

static void BM_DensityMatrix(benchmark::State& state) {
  const AtomSystem sys;
  double dc = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(density_matrix_coherence(sys, dc));
    dc += 1e-3;
  }
}
BENCHMARK(BM_DensityMatrix);

static void BM_FisherMap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> dc(n), oc(21);
  for (std::size_t i = 0; i < n; ++i) dc[i] = -20.0 + 40.0 * static_cast<double>(i) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < oc.size(); ++i) oc[i] = 5.0 + static_cast<double>(i);
  for (auto _ : state) benchmark::DoNotOptimize(fisher_map(AtomSystem{}, default_medium(), PhotonBudget{}, dc, oc));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * oc.size()));
}
BENCHMARK(BM_FisherMap)->Arg(201)->Arg(801)->Unit(benchmark::kMillisecond);

static void BM_OptimalOperatingPoint(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(optimal_operating_point(AtomSystem{}, default_medium(), PhotonBudget{}, 1e-3, 20.0));
}
BENCHMARK(BM_OptimalOperatingPoint)->Unit(benchmark::kMillisecond);

static void BM_Dft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  TimeSeries s{1000.0, std::vector<double>(n), 0.0};
  for (double& v : s.samples) v = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(dft(s));
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Dft)->Arg(1 << 13)->Arg(10000)->Arg(1 << 16)->Arg(100000)->Unit(benchmark::kMicrosecond);

static void BM_SenseTimeseries(benchmark::State& state) {
  const SensorConfig cfg(AtomSystem{}, default_medium(), StarkState{}, PhotonBudget{}, 2.18, 1.0);
  FieldSpec spec;
  spec.a = 0.1;
  const auto field = synthesize_field(spec, 10.0, 1000.0, 1.0);
  const NoiseSpec noise{0.02, 2.0, 0.0, 0.003, 0.4, 1};
  for (auto _ : state) benchmark::DoNotOptimize(sense_timeseries(cfg, field, noise));
}
BENCHMARK(BM_SenseTimeseries)->Unit(benchmark::kMillisecond);

static void BM_EnhancementReport(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(enhancement_report(CavityConfig{}, AtomSystem{}, default_medium(), FieldInformation{}));
}
BENCHMARK(BM_EnhancementReport)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
