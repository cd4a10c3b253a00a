#include <benchmark/benchmark.h>

#include "bitadapt/optimizer.hpp"

using namespace bitadapt;

static void BM_ExhaustiveBitIndependent(benchmark::State& state) {
  const auto in = InputDistribution::uniform(8);
  const auto rc = generate_random_constraint(8, 0);
  ExhaustiveOptions opts;
  opts.resolution_log2 = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_search_bit_independent(in, rc.constraint, opts));
}
BENCHMARK(BM_ExhaustiveBitIndependent)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_AdaptiveBitLevel(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const auto in = InputDistribution::uniform(L);
  const auto rc = generate_random_constraint(L, 1);
  for (auto _ : state) benchmark::DoNotOptimize(adaptive_search_bit_level(in, rc.constraint));
}
BENCHMARK(BM_AdaptiveBitLevel)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
