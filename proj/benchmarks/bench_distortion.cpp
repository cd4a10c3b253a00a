#include <benchmark/benchmark.h>

#include <random>

#include "bitadapt/distortion.hpp"
#include "bitadapt/error_sets.hpp"

using namespace bitadapt;

namespace {

ChannelModel ramp_channel(int width) {
  std::vector<double> down(width), up(width);
  for (int i = 0; i < width; ++i) {
    down[i] = 0.01 * (i + 1);
    up[i] = 0.005 * (width - i);
  }
  return ChannelModel::independent(down, up);
}

ChannelModel noisy_dependent(int width) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 0.2);
  const std::size_t n = std::size_t{1} << width;
  std::vector<double> down(n * width), up(n * width);
  for (auto& p : down) p = u(rng);
  for (auto& p : up) p = u(rng);
  return ChannelModel::dependent(width, down, up);
}

}  // namespace

static void BM_Enumerative(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const auto sets = build_error_sets(L);
  const auto ch = ramp_channel(L);
  const auto in = InputDistribution::uniform(L);
  for (auto _ : state) benchmark::DoNotOptimize(distortion_pmf_enumerative(sets, ch, in));
}
BENCHMARK(BM_Enumerative)->DenseRange(4, 10, 2);

static void BM_BitSweep(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const auto ch = ramp_channel(L);
  const auto in = InputDistribution::uniform(L);
  for (auto _ : state) benchmark::DoNotOptimize(distortion_pmf_bit_sweep(*ch.as_independent(), in));
}
BENCHMARK(BM_BitSweep)->DenseRange(4, 16, 4);

static void BM_PerWord(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const auto ch = noisy_dependent(L);
  const auto in = InputDistribution::uniform(L);
  for (auto _ : state) benchmark::DoNotOptimize(distortion_pmf_per_word(ch, in));
}
BENCHMARK(BM_PerWord)->DenseRange(4, 10, 2);

static void BM_BruteForce(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const auto ch = ramp_channel(L);
  const auto in = InputDistribution::uniform(L);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_oracle(ch, in));
}
BENCHMARK(BM_BruteForce)->DenseRange(4, 8, 2);

static void BM_ErrorSetCounts(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_error_set_counts(L));
}
BENCHMARK(BM_ErrorSetCounts)->Arg(8)->Arg(12);
