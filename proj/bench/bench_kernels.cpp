// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include "kloost/goethals.hpp"
#include "kloost/ksum.hpp"

namespace {

using namespace kloost;

void BM_SpectrumSerial(benchmark::State& state) {
  const Field f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_serial(f));
  state.SetItemsProcessed(state.iterations() * f.order());
}

void BM_SpectrumParallel(benchmark::State& state) {
  const Field f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(f));
  state.SetItemsProcessed(state.iterations() * f.order());
}

void BM_Mu2FastTableSerial(benchmark::State& state) {
  const Field f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mu2_fast_table_serial(f));
}

void BM_Mu2FastTableParallel(benchmark::State& state) {
  const Field f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mu2_fast_table(f));
}

BENCHMARK(BM_SpectrumSerial)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectrumParallel)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Mu2FastTableSerial)->DenseRange(6, 8, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Mu2FastTableParallel)->DenseRange(6, 8, 1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
