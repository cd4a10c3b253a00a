#include <doctest.h>

#include <cmath>

#include "bitadapt/distortion.hpp"
#include "bitadapt/errors.hpp"
#include "bitadapt/i2c.hpp"
#include "oracles.hpp"

using namespace bitadapt;
using namespace bitadapt::i2c;

namespace {

bool throws_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

BenchMeasurements measured_bench() {
  BenchMeasurements m;
  m.v1_min = 2.1316;
  m.v1_max = 2.0723;
  m.r_dcp_min = 3920.0;
  m.r_dcp_max = 62750.0;
  return m;
}

// Root of (r || a) / (r || b) = ratio by bisection on a log scale.
double bisect_internal_pullup(double a, double b, double ratio) {
  double lo = 1e-3;
  double hi = 1e7;
  auto f = [&](double r) { return (r * a / (r + a)) / (r * b / (r + b)) - ratio; };
  for (int k = 0; k < 200; ++k) {
    const double mid = std::sqrt(lo * hi);
    if ((f(mid) > 0.0) == (f(hi) > 0.0)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::sqrt(lo * hi);
}

}  // namespace

TEST_SUITE("i2c-channel") {

TEST_CASE("presets and validation") {
  const auto t = dcp_preset("isl23415-100k");
  CHECK(t.size() == 255);
  CHECK(t.at(10) == doctest::Approx(3921.57).epsilon(1e-5));
  CHECK(t.at(160) == doctest::Approx(62745.1).epsilon(1e-5));
  CHECK(dcp_preset("isl23415-10k").at(255) == 10000.0);
  CHECK(throws_kind(ErrorKind::InvalidArgument, [] { (void)dcp_preset("nope"); }));
  auto p = circuit_preset("isl23415-100k");
  CHECK_NOTHROW(p.validate());
  p.v_th = 3.0;
  CHECK(throws_kind(ErrorKind::InvalidArgument, [&] { p.validate(); }));
  CHECK(throws_kind(ErrorKind::InvalidArgument, [] { (void)circuit_preset("isl23415-100k").r_dcp(0); }));
}

TEST_CASE("parallel treats infinity as identity") {
  CHECK(parallel(kInfiniteResistance, 100.0) == 100.0);
  CHECK(parallel(100.0, 100.0) == 50.0);
  CHECK(pullup_ratio(kInfiniteResistance, 3920.0, 62750.0) == 62750.0 / 3920.0);
}

TEST_CASE("resistance estimation from the bench levels") {
  const auto est = estimate_resistances(measured_bench(), 2.5);
  CHECK(est.ratio == doctest::Approx(1.19).epsilon(0.01 / 1.19));
  CHECK(est.r_ipu == doctest::Approx(820.0).epsilon(0.05));
  CHECK(est.r_off == doctest::Approx(3940.0).epsilon(0.05));
  const double k_min = (2.5 - 2.1316) / 2.1316;
  const double k_max = (2.5 - 2.0723) / 2.0723;
  const double by_bisection = bisect_internal_pullup(62750.0, 3920.0, k_max / k_min);
  CHECK(est.r_ipu == doctest::Approx(by_bisection).epsilon(1e-9));
  const double r_off_direct = 2.1316 * parallel(by_bisection, 3920.0) / (2.5 - 2.1316);
  CHECK(est.r_off == doctest::Approx(r_off_direct).epsilon(1e-9));
}

TEST_CASE("resistance estimation round trip") {
  for (double r_ipu : {500.0, 822.0, 5000.0, 47000.0}) {
    for (double r_off : {2000.0, 3940.0, 12000.0}) {
      CircuitParams p = circuit_preset("isl23415-100k");
      p.r_ipu = r_ipu;
      p.r_off = r_off;
      const auto m = synthesize_measurements(p, 10, 160);
      const auto est = estimate_resistances(m, p.v_supply);
      CHECK(est.r_ipu == doctest::Approx(r_ipu).epsilon(1e-3));
      CHECK(est.r_off == doctest::Approx(r_off).epsilon(1e-3));
      p.r_ipu = est.r_ipu;
      p.r_off = est.r_off;
      CHECK(estimate_capacitance(m.rise_min, p, 10) == doctest::Approx(100e-12).epsilon(1e-3));
    }
  }
}

TEST_CASE("resistance estimation failures") {
  auto flat = measured_bench();
  flat.v1_max = flat.v1_min;
  CHECK(throws_kind(ErrorKind::InconsistentMeasurements, [&] { (void)estimate_resistances(flat, 2.5); }));
  auto inverted = measured_bench();
  std::swap(inverted.v1_min, inverted.v1_max);
  CHECK(throws_kind(ErrorKind::InconsistentMeasurements, [&] { (void)estimate_resistances(inverted, 2.5); }));
  // Larger spread than the DCP endpoints allow: no positive internal pull-up.
  auto wide = measured_bench();
  wide.v1_max = 0.3;
  CHECK(throws_kind(ErrorKind::EstimationFailure, [&] { (void)estimate_resistances(wide, 2.5); }));
}

TEST_CASE("capacitance estimate") {
  CircuitParams p = circuit_preset("isl23415-100k");
  const double r_par = parallel(p.r_off, p.r_dcp(10));
  CHECK(estimate_capacitance(std::log(9.0) * r_par * 100e-12, p, 10) == doctest::Approx(100e-12).epsilon(1e-12));
  CircuitParams q = p;
  q.r_off = 1e12;
  q.dcp_table = {{1, 1000.0}, {2, 2000.0}};
  CHECK(estimate_capacitance(1e-6, q, 2) == doctest::Approx(0.5 * estimate_capacitance(1e-6, q, 1)).epsilon(1e-6));
}

TEST_CASE("steady state levels") {
  CircuitParams p;
  p.dcp_table = {{1, 1e-6}, {2, 3920.0}};
  CHECK(steady_state_levels(p, 1).v1 == doctest::Approx(2.5).epsilon(1e-9));
  p.r_on = 0.0;
  CHECK(steady_state_levels(p, 2).v0 == 0.0);
  const auto est = estimate_resistances(measured_bench(), 2.5);
  CircuitParams bench;
  bench.r_ipu = est.r_ipu;
  bench.r_off = est.r_off;
  bench.dcp_table = {{0, 3920.0}, {1, 62750.0}};
  CHECK(steady_state_levels(bench, 0).v1 == doctest::Approx(2.1316).epsilon(1e-9));
  CHECK(steady_state_levels(bench, 1).v1 == doctest::Approx(2.0723).epsilon(1e-9));
}

TEST_CASE("sampling error probability") {
  CHECK(sampling_error_probability(1.25, 1.25, 0.02) == 0.5);
  CHECK(sampling_error_probability(1.27, 1.25, 0.02) == doctest::Approx(0.15865525393145707).epsilon(1e-9));
  for (double z : {-3.0, -1.5, -0.2, 0.7, 2.5})
    CHECK(sampling_error_probability(1.25 - z * 0.02, 1.25, 0.02) == doctest::Approx(oracle::normal_cdf(z)).epsilon(1e-9));
}

TEST_CASE("stiff pull-up is reliable") {
  const auto p = circuit_preset("isl23415-10k");
  const auto profile = DcpProfile::fixed(1, 1);
  for (WordValue x = 0; x < 256; ++x)
    for (double q : byte_error_profile(x, profile, p)) CHECK(q < 1e-9);
}

TEST_CASE("byte error profile follows the recursion") {
  const auto p = circuit_preset("isl23415-100k");
  DcpProfile profile;
  profile.settings = {8, 9, 10, 11, 12, 10, 9, 8};
  profile.nominal = 3;
  const WordValue x = 0b10110111;
  double line = steady_state_levels(p, 3).v0;
  const auto got = byte_error_profile(x, profile, p);
  const auto volts = sampled_voltages(x, profile, p);
  for (int j = 0; j < 8; ++j) {
    const int bit = 7 - j;
    const int s = profile.settings[j];
    const double r_pu = p.r_dcp(s);
    const double v1 = p.v_supply * p.r_off / (p.r_off + r_pu);
    if ((x >> bit) & 1U) {
      const double tau = (p.r_off * r_pu / (p.r_off + r_pu)) * p.c_bus;
      line = line * std::exp(-p.t_clk / tau) + v1 * (1.0 - std::exp(-p.t_clk / tau));
      CHECK(got[bit] == doctest::Approx(oracle::normal_cdf((p.v_th - line) / p.sigma_n)).epsilon(1e-9));
    } else {
      line = p.v_supply * p.r_on / (p.r_on + r_pu);
      CHECK(got[bit] == 0.0);
    }
    CHECK(volts[j] == doctest::Approx(line).epsilon(1e-12));
  }
}

TEST_CASE("voltage iteration bounds and start monotonicity") {
  const auto p = circuit_preset("isl23415-100k");
  DcpProfile low;
  low.settings = {12, 11, 10, 9, 8, 9, 10, 11};
  low.nominal = 1;
  DcpProfile high = low;
  high.nominal = 255;
  const double v1_cap = p.v_supply * p.r_off / (p.r_off + p.r_dcp(1));
  for (WordValue x = 0; x < 256; ++x) {
    const auto a = sampled_voltages(x, low, p);
    const auto b = sampled_voltages(x, high, p);
    for (int j = 0; j < 8; ++j) {
      CHECK(a[j] >= 0.0);
      CHECK(a[j] <= v1_cap);
      // Nominal 1 leaves a higher logic-0 level than nominal 255.
      CHECK(a[j] >= b[j]);
    }
  }
}

TEST_CASE("channel from profile") {
  const auto p = circuit_preset("isl23415-100k");
  const auto profile = DcpProfile::fixed(10, 1);
  const auto ch = channel_from_profile(profile, p);
  CHECK(ch.width() == 8);
  for (WordValue x = 0; x < 256; ++x) {
    const auto row = byte_error_profile(x, profile, p);
    for (int i = 0; i < 8; ++i) {
      CHECK(ch.p_down(x, i) == row[i]);
      CHECK(ch.p_up(x, i) == 0.0);
    }
  }
  auto quiet = p;
  quiet.sigma_n = 1e-9;
  const auto clean = channel_from_profile(DcpProfile::fixed(8, 1), quiet);
  const auto d = distortion_pmf_fast(clean, InputDistribution::uniform(8));
  CHECK(d.pmf()[0] == 1.0);
}

TEST_CASE("received value never exceeds the transmitted one") {
  const auto p = circuit_preset("isl23415-100k");
  const auto ch = channel_from_profile(DcpProfile::fixed(11, 1), p);
  const auto mc = monte_carlo_distortion(ch, InputDistribution::uniform(8), 2000, 3);
  CHECK(mc.pmf()[0] > 0.0);
  for (WordValue x = 0; x < 256; ++x)
    for (int i = 0; i < 8; ++i)
      if (((x >> i) & 1U) == 0) CHECK(ch.flip(x, i) == 0.0);
}

TEST_CASE("tails grow with the pull-up setting") {
  const auto p = circuit_preset("isl23415-100k");
  const auto input = InputDistribution::uniform(8);
  std::vector<double> previous(256, 0.0);
  for (int s = 8; s <= 12; ++s) {
    const auto d = distortion_pmf_fast(channel_from_profile(DcpProfile::fixed(s, 1), p), input);
    for (std::size_t m = 0; m < 256; ++m) CHECK(d.tail()[m] >= previous[m] - 1e-12);
    previous.assign(d.tail().begin(), d.tail().end());
  }
}

TEST_CASE("power estimate trends") {
  auto p = circuit_preset("isl23415-100k");
  CHECK(power_estimate(p, 10, 0.0, 0.0) == 0.0);
  double last = power_estimate(p, 1, 0.5, 1e5);
  for (int s = 2; s <= 255; ++s) {
    const double now = power_estimate(p, s, 0.5, 1e5);
    CHECK(now < last);
    last = now;
  }
  CHECK(power_estimate(p, 10, 0.6, 1e5) > power_estimate(p, 10, 0.4, 1e5));
  CHECK(power_estimate(p, 10, 0.5, 2e5) > power_estimate(p, 10, 0.5, 1e5));
  CHECK(throws_kind(ErrorKind::InvalidArgument, [&] { (void)power_estimate(p, 10, 1.5, 0.0); }));
}

}  // TEST_SUITE
