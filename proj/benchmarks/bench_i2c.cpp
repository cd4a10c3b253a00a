#include <benchmark/benchmark.h>

#include "bitadapt/distortion.hpp"
#include "bitadapt/i2c.hpp"

using namespace bitadapt;

static void BM_ByteTabulation(benchmark::State& state) {
  const auto params = i2c::circuit_preset("isl23415-100k");
  const auto profile = i2c::DcpProfile::fixed(10, 1);
  for (auto _ : state) benchmark::DoNotOptimize(i2c::channel_from_profile(profile, params));
}
BENCHMARK(BM_ByteTabulation);

static void BM_SweepPoint(benchmark::State& state) {
  const auto params = i2c::circuit_preset("isl23415-100k");
  const auto in = InputDistribution::uniform(8);
  for (auto _ : state) {
    const auto ch = i2c::channel_from_profile(i2c::DcpProfile::fixed(10, 1), params);
    benchmark::DoNotOptimize(distortion_pmf_fast(ch, in));
  }
}
BENCHMARK(BM_SweepPoint);
