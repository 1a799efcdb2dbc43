// OpenMP kernels against their serial references. Run with
// OMP_NUM_THREADS set to compare scaling.
#include "m0a/positivity.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace m0a;

// A lattice large enough that the exact-rational drop evaluations dominate.
CoefficientVector bench_coeffs(int m) {
  return CoefficientVector::from_ab(m, Rational(37, 41), Rational(53, 29));
}

void BM_MinDropParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const WeightVector w = make_weights(n, m, 3);
  const CoefficientVector coeffs = bench_coeffs(m);
  for (auto _ : state) benchmark::DoNotOptimize(min_drop(w, coeffs));
  state.SetItemsProcessed(state.iterations() * (n + 1) * (m + 1));
}

void BM_MinDropSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const WeightVector w = make_weights(n, m, 3);
  const CoefficientVector coeffs = bench_coeffs(m);
  for (auto _ : state) benchmark::DoNotOptimize(min_drop_serial(w, coeffs));
  state.SetItemsProcessed(state.iterations() * (n + 1) * (m + 1));
}

void BM_ThresholdTableParallel(benchmark::State& state) {
  const int nmax = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(threshold_table(2, nmax, 8));
}

void BM_ThresholdTableSerial(benchmark::State& state) {
  const int nmax = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(threshold_table_serial(2, nmax, 8));
}

}  // namespace

BENCHMARK(BM_MinDropParallel)->Args({60, 10})->Args({200, 40})->Args({500, 80})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MinDropSerial)->Args({60, 10})->Args({200, 40})->Args({500, 80})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ThresholdTableParallel)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ThresholdTableSerial)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
