// Micro-benchmarks contrasting the recursions with brute-force enumeration
// and timing the hot polynomial paths.

#include <benchmark/benchmark.h>

#include "bfstat/bfstat.hpp"

using namespace bfstat;

namespace {

Spectrum bench_spectrum() {
  return Spectrum::from_grid_levels({{0, 2}, {1, 1}, {2, 3}, {4, 1}, {7, 2}});
}

void BM_weight_recursion(benchmark::State& state) {
  const Spectrum s = bench_spectrum();
  const auto N = state.range(0);
  const auto U = state.range(1);
  for (auto _ : state) {
    WeightTable t(s, Statistics::Bose);
    benchmark::DoNotOptimize(t.weight(N, U));
  }
}

void BM_weight_enumeration(benchmark::State& state) {
  const Spectrum s = bench_spectrum();
  const auto N = state.range(0);
  const auto U = state.range(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_weight(s, Statistics::Bose, N, U));
}

void BM_partition_function(benchmark::State& state) {
  const Spectrum s = bench_spectrum();
  const auto N = state.range(0);
  for (auto _ : state) {
    CanonicalContext ctx(s, Statistics::Bose);
    benchmark::DoNotOptimize(ctx.partition_function(N));
  }
}

void BM_restricted_partitions(benchmark::State& state) {
  const auto B = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(restricted_partition_count(B, B, B * B / 2));
}

void BM_qseries_multiply(benchmark::State& state) {
  const QSeries a = QSeries::pochhammer(12, 64).reciprocal(64);
  const QSeries b = QSeries::pochhammer(9, 64);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}

}  // namespace

BENCHMARK(BM_weight_recursion)->Args({4, 20})->Args({6, 30});
BENCHMARK(BM_weight_enumeration)->Args({4, 20})->Args({6, 30});
BENCHMARK(BM_partition_function)->Arg(3)->Arg(6);
BENCHMARK(BM_restricted_partitions)->Arg(20)->Arg(40);
BENCHMARK(BM_qseries_multiply);

BENCHMARK_MAIN();
