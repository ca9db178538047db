#include <benchmark/benchmark.h>

#include <vector>

#include "ergodiag/estimators.hpp"
#include "ergodiag/harness.hpp"
#include "ergodiag/model.hpp"
#include "ergodiag/processes.hpp"

using namespace ergodiag;

static void BM_ExactVnLag(benchmark::State& state) {
  const ProcessSpec spec = build_spec(ProcessConfig::ar1(0.5, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_vn(spec, state.range(0)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactVnLag)->RangeMultiplier(10)->Range(100, 1'000'000)->Complexity();

static void BM_ExactVnDoubleSum(benchmark::State& state) {
  const ProcessSpec spec = build_spec(ProcessConfig::ar1(0.5, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_vn_double_sum(spec, state.range(0)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactVnDoubleSum)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

static void BM_SamplePath(benchmark::State& state) {
  const auto family = static_cast<int>(state.range(0));
  const ProcessConfig cfg = family == 0 ? ProcessConfig::ar1(0.5, 1.0)
                            : family == 1 ? ProcessConfig::remark3()
                                          : ProcessConfig::common_shock(1.0, 1.0);
  std::vector<double> out(10000);
  std::uint64_t r = 0;
  for (auto _ : state) {
    fill_path(cfg, RngSeed{1, r++}, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
  state.SetLabel(cfg.label());
}
BENCHMARK(BM_SamplePath)->DenseRange(0, 2);

static void BM_SampleAutocovariance(benchmark::State& state) {
  const Path path = sample_path(ProcessConfig::ar1(0.5, 1.0), 100000, RngSeed{2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(sample_autocovariance(path, state.range(0)));
}
BENCHMARK(BM_SampleAutocovariance)->Arg(10)->Arg(100)->Arg(1000);

static void BM_EstimateTau(benchmark::State& state) {
  const AutocovEstimate acov = sample_autocovariance(sample_path(ProcessConfig::ar1(0.9, 1.0), 100000, RngSeed{3, 0}), 1000);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_tau(acov));
}
BENCHMARK(BM_EstimateTau);

static void BM_ReplicateAverages(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(replicate_averages(ProcessConfig::ar1(0.5, 1.0), 1000, 1000, 4, RunOptions{1}));
  }
  state.SetItemsProcessed(state.iterations() * 1000 * 1000);
}
BENCHMARK(BM_ReplicateAverages)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
