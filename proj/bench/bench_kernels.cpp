#include <benchmark/benchmark.h>

#include "minexp/graph.hpp"
#include "minexp/kernels.hpp"

namespace {

using namespace minexp;

const BipartiteGraph& graph() {
  static const BipartiteGraph g = random_left_regular(30, 20, 3, 7);
  return g;
}

void BM_ExpansionParallel(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::find_expansion_violation(graph(), k, 1.0));
}

void BM_ExpansionSerial(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::find_expansion_violation(graph(), k, 1.0));
}

void BM_DeficiencyParallel(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::min_deficiency(graph(), k));
}

void BM_DeficiencySerial(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::min_deficiency(graph(), k));
}

void BM_DependentSetParallel(benchmark::State& state) {
  const MeasurementMatrix a = perturb(graph(), 0.1, 3);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::smallest_dependent_set(a.dense(), k, 1e-10));
}

void BM_DependentSetSerial(benchmark::State& state) {
  const MeasurementMatrix a = perturb(graph(), 0.1, 3);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::smallest_dependent_set(a.dense(), k, 1e-10));
}

}  // namespace

BENCHMARK(BM_ExpansionParallel)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExpansionSerial)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeficiencyParallel)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeficiencySerial)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DependentSetParallel)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DependentSetSerial)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
