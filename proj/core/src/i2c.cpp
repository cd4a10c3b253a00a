#include "bitadapt/i2c.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bitadapt/errors.hpp"

namespace bitadapt::i2c {

namespace {

bool positive(double r) { return r > 0.0 && !std::isnan(r); }

}  // namespace

void CircuitParams::validate() const {
  require(v_supply > 0.0 && std::isfinite(v_supply), ErrorKind::InvalidArgument, "v_supply must be positive");
  require(v_th > 0.0 && v_th < v_supply, ErrorKind::InvalidArgument, "v_th must lie in (0, v_supply)");
  require(positive(r_ipu), ErrorKind::InvalidArgument, "r_ipu must be positive (or infinite)");
  require(positive(r_off) && std::isfinite(r_off), ErrorKind::InvalidArgument, "r_off must be positive");
  require(r_on >= 0.0 && std::isfinite(r_on), ErrorKind::InvalidArgument, "r_on must be non-negative");
  require(c_bus > 0.0 && std::isfinite(c_bus), ErrorKind::InvalidArgument, "c_bus must be positive");
  require(sigma_n > 0.0 && std::isfinite(sigma_n), ErrorKind::InvalidArgument, "sigma_n must be positive");
  require(t_clk > 0.0 && std::isfinite(t_clk), ErrorKind::InvalidArgument, "t_clk must be positive");
  require(!dcp_table.empty(), ErrorKind::InvalidArgument, "DCP table is empty");
  for (const auto& [setting, ohms] : dcp_table)
    require(positive(ohms) && std::isfinite(ohms), ErrorKind::InvalidArgument,
            "DCP setting " + std::to_string(setting) + " has a non-positive resistance");
}

double CircuitParams::r_dcp(int setting) const {
  const auto it = dcp_table.find(setting);
  require(it != dcp_table.end(), ErrorKind::InvalidArgument,
          "DCP setting " + std::to_string(setting) + " is not in the table");
  return it->second;
}

DcpProfile DcpProfile::fixed(int setting, int nominal) {
  DcpProfile p;
  p.settings.fill(setting);
  p.nominal = nominal;
  return p;
}

void DcpProfile::validate(const CircuitParams& params) const {
  for (int s : settings) (void)params.r_dcp(s);
  (void)params.r_dcp(nominal);
}

DcpTable uniform_dcp_table(double total_ohms) {
  require(positive(total_ohms), ErrorKind::InvalidArgument, "DCP total resistance must be positive");
  DcpTable table;
  for (int tap = 1; tap <= 255; ++tap) table.emplace(tap, tap * total_ohms / 255.0);
  return table;
}

DcpTable dcp_preset(const std::string& name) {
  if (name == "isl23415-100k") return uniform_dcp_table(100e3);
  if (name == "isl23415-10k") return uniform_dcp_table(10e3);
  fail(ErrorKind::InvalidArgument, "unknown DCP preset '" + name + "'");
}

CircuitParams circuit_preset(const std::string& dcp_name) {
  CircuitParams p;
  p.dcp_table = dcp_preset(dcp_name);
  p.dcp_preset = dcp_name;
  return p;
}

double parallel(double a, double b) noexcept {
  if (std::isinf(a)) return b;
  if (std::isinf(b)) return a;
  return a * b / (a + b);
}

double pullup_equivalent(const CircuitParams& params, int setting) {
  return parallel(params.r_ipu, params.r_dcp(setting));
}

double pullup_ratio(double r_ipu, double r_min, double r_max) noexcept {
  return parallel(r_ipu, r_max) / parallel(r_ipu, r_min);
}

ResistanceEstimate estimate_resistances(const BenchMeasurements& m, double v_supply) {
  require(m.v1_min > 0.0 && m.v1_min < v_supply && m.v1_max > 0.0 && m.v1_max < v_supply,
          ErrorKind::InconsistentMeasurements, "logic-1 levels must lie strictly between 0 and v_supply");
  require(m.v1_min != m.v1_max, ErrorKind::InconsistentMeasurements, "logic-1 levels at both settings are equal");
  require(positive(m.r_dcp_min) && positive(m.r_dcp_max), ErrorKind::InvalidArgument,
          "DCP endpoint resistances must be positive");

  // r_pu_eq / r_off = (v_supply - v1) / v1 at each setting.
  const double k_min = (v_supply - m.v1_min) / m.v1_min;
  const double k_max = (v_supply - m.v1_max) / m.v1_max;
  const double ratio = k_max / k_min;
  const double a = m.r_dcp_max;
  const double b = m.r_dcp_min;
  require(!(a > b && ratio <= 1.0), ErrorKind::InconsistentMeasurements,
          "a larger pull-up must lower the logic-1 level (pull-up ratio " + std::to_string(ratio) + " <= 1)");

  // (r || a) / (r || b) = a (r + b) / (b (r + a)) = ratio  =>  r = a b (ratio - 1) / (a - ratio b)
  const double denom = a - ratio * b;
  const double r_ipu = a * b * (ratio - 1.0) / denom;
  require(std::isfinite(r_ipu) && r_ipu > 0.0 && r_ipu <= kMaxEstimatedResistance, ErrorKind::EstimationFailure,
          "no internal pull-up resistance in (0, 1e7] ohms reproduces ratio " + std::to_string(ratio));
  const double r_off = parallel(r_ipu, b) / k_min;
  return {r_ipu, r_off, ratio};
}

double estimate_capacitance(double rise_time, const CircuitParams& params, int setting) {
  require(rise_time > 0.0, ErrorKind::InvalidArgument, "rise time must be positive");
  const double r_par = parallel(params.r_off, pullup_equivalent(params, setting));
  return rise_time / (kRiseTimeConstants * r_par);
}

LogicLevels steady_state_levels(const CircuitParams& params, int setting) {
  const double r_pu = pullup_equivalent(params, setting);
  return {params.v_supply * params.r_on / (params.r_on + r_pu), params.v_supply * params.r_off / (params.r_off + r_pu)};
}

double rise_time_constant(const CircuitParams& params, int setting) {
  return parallel(params.r_off, pullup_equivalent(params, setting)) * params.c_bus;
}

BenchMeasurements synthesize_measurements(const CircuitParams& params, int setting_min, int setting_max) {
  const auto lo = steady_state_levels(params, setting_min);
  const auto hi = steady_state_levels(params, setting_max);
  const auto fall_tau = [&](int s) {
    return parallel(parallel(params.r_on, params.r_off), pullup_equivalent(params, s)) * params.c_bus;
  };
  BenchMeasurements m;
  m.v1_min = lo.v1;
  m.v1_max = hi.v1;
  m.v0_min = lo.v0;
  m.v0_max = hi.v0;
  m.rise_min = kRiseTimeConstants * rise_time_constant(params, setting_min);
  m.rise_max = kRiseTimeConstants * rise_time_constant(params, setting_max);
  m.fall_min = kRiseTimeConstants * fall_tau(setting_min);
  m.fall_max = kRiseTimeConstants * fall_tau(setting_max);
  m.r_dcp_min = params.r_dcp(setting_min);
  m.r_dcp_max = params.r_dcp(setting_max);
  return m;
}

double sampling_error_probability(double v, double v_th, double sigma) noexcept {
  const double p = 0.5 * std::erfc((v - v_th) / (sigma * std::sqrt(2.0)));
  return std::clamp(p, 0.0, 1.0);
}

std::array<double, kByteBits> sampled_voltages(WordValue byte, const DcpProfile& profile, const CircuitParams& params) {
  require(byte < 256, ErrorKind::InvalidArgument, "byte value out of range");
  std::array<double, kByteBits> v{};
  // The ACK cycle before every byte leaves SDA at the nominal logic-0 level.
  double line = steady_state_levels(params, profile.nominal).v0;
  for (int j = 0; j < kByteBits; ++j) {
    const int setting = profile.settings[j];
    const auto levels = steady_state_levels(params, setting);
    const bool one = ((byte >> (kByteBits - 1 - j)) & 1U) != 0;
    if (one) {
      const double decay = std::exp(-params.t_clk / rise_time_constant(params, setting));
      line = line * decay + levels.v1 * (1.0 - decay);
    } else {
      line = levels.v0;  // discharge is fast: the line settles within the cycle
    }
    v[j] = line;
  }
  return v;
}

std::array<double, kByteBits> byte_error_profile(WordValue byte, const DcpProfile& profile, const CircuitParams& params) {
  const auto voltages = sampled_voltages(byte, profile, params);
  std::array<double, kByteBits> p{};
  for (int j = 0; j < kByteBits; ++j) {
    const int bit = kByteBits - 1 - j;
    if ((byte >> bit) & 1U) p[bit] = sampling_error_probability(voltages[j], params.v_th, params.sigma_n);
  }
  return p;
}

ChannelModel channel_from_profile(const DcpProfile& profile, const CircuitParams& params) {
  params.validate();
  profile.validate(params);
  constexpr std::size_t kWords = 256;
  std::vector<double> down(kWords * kByteBits, 0.0);
  std::vector<double> up(kWords * kByteBits, 0.0);
  for (WordValue x = 0; x < kWords; ++x) {
    const auto p = byte_error_profile(x, profile, params);
    std::copy(p.begin(), p.end(), down.begin() + static_cast<std::ptrdiff_t>(x * kByteBits));
  }
  return ChannelModel::dependent(kByteBits, std::move(down), std::move(up));
}

double power_estimate(const CircuitParams& params, int setting, double duty0, double f_switch) {
  require(duty0 >= 0.0 && duty0 <= 1.0, ErrorKind::InvalidArgument, "duty0 must lie in [0, 1]");
  require(f_switch >= 0.0, ErrorKind::InvalidArgument, "switching frequency must be non-negative");
  const double r_pu = pullup_equivalent(params, setting);
  const double v0 = steady_state_levels(params, setting).v0;
  const double conduction = duty0 * params.v_supply * (params.v_supply - v0) / r_pu;
  const double switching = f_switch * params.c_bus * params.v_supply * params.v_supply;
  return conduction + switching;
}

}  // namespace bitadapt::i2c
