#pragma once

#include <array>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "bitadapt/channel.hpp"
#include "bitadapt/word.hpp"

namespace bitadapt::i2c {

inline constexpr int kByteBits = 8;
inline constexpr double kInfiniteResistance = std::numeric_limits<double>::infinity();

/// DCP setting index -> external pull-up resistance in ohms.
using DcpTable = std::map<int, double>;

// Equivalent circuit of the SDA line while a logic 1 is being received.
// SI units throughout.
struct CircuitParams {
  double v_supply = 2.5;
  double v_th = 1.25;                       // receiver threshold, v_supply / 2 by default
  double r_ipu = kInfiniteResistance;       // internal pull-up paths, infinite when absent
  double r_off = 3940.0;                    // pull-down off-resistance
  double r_on = 15.0;                       // drive transistor on-resistance
  double c_bus = 100e-12;
  double sigma_n = 0.020;
  double t_clk = 5e-6;                      // 200 kHz bus clock
  DcpTable dcp_table;
  std::string dcp_preset;                   // name of the table's preset, if any

  void validate() const;
  [[nodiscard]] double r_dcp(int setting) const;
};

// Pull-up settings applied to the eight data bits in transmission order
// (settings[0] governs the MSB), plus the nominal setting used for ACK/START/STOP.
struct DcpProfile {
  std::array<int, kByteBits> settings{};
  int nominal = 0;

  static DcpProfile fixed(int setting, int nominal);
  void validate(const CircuitParams& params) const;
};

// Steady-state levels and 10-90% edge times at the minimum and maximum DCP settings.
struct BenchMeasurements {
  double v1_min = 0.0;
  double v1_max = 0.0;
  double v0_min = 0.0;
  double v0_max = 0.0;
  double rise_min = 0.0;
  double rise_max = 0.0;
  double fall_min = 0.0;
  double fall_max = 0.0;
  double r_dcp_min = 0.0;
  double r_dcp_max = 0.0;
};

struct ResistanceEstimate {
  double r_ipu;
  double r_off;
  double ratio;  // (r_ipu || r_dcp_max) / (r_ipu || r_dcp_min)
};

struct LogicLevels {
  double v0;
  double v1;
};

/// Uniform-step table for a 256-tap potentiometer: tap k -> k * total / 255.
/// Tap 0 (zero ohms) is omitted since it would short the pull-up.
[[nodiscard]] DcpTable uniform_dcp_table(double total_ohms);

/// Known DCP presets: "isl23415-100k", "isl23415-10k".
[[nodiscard]] DcpTable dcp_preset(const std::string& name);

/// Bus parameters with no internal pull-up, C = 100 pF and sigma_n = 20 mV around
/// the given DCP preset.
[[nodiscard]] CircuitParams circuit_preset(const std::string& dcp_name);

/// a || b, with infinity as the identity.
[[nodiscard]] double parallel(double a, double b) noexcept;

[[nodiscard]] double pullup_equivalent(const CircuitParams& params, int setting);

/// (r_ipu || r_max) / (r_ipu || r_min). Equals r_max / r_min when r_ipu is infinite.
[[nodiscard]] double pullup_ratio(double r_ipu, double r_min, double r_max) noexcept;

/// Inverts the steady-state logic-1 divider at both DCP extremes. The pull-up
/// ratio equation has a closed-form solution for r_ipu; roots outside (0, 1e7]
/// ohms are reported as EstimationFailure.
[[nodiscard]] ResistanceEstimate estimate_resistances(const BenchMeasurements& m, double v_supply);

inline constexpr double kMaxEstimatedResistance = 1e7;

/// ln 9: a single exponential takes ln 9 time constants to go from 10% to 90%.
inline constexpr double kRiseTimeConstants = 2.1972245773362196;

/// C = rise / (ln 9 * (r_off || r_ipu || r_dcp(setting))).
[[nodiscard]] double estimate_capacitance(double rise_time, const CircuitParams& params, int setting);

[[nodiscard]] LogicLevels steady_state_levels(const CircuitParams& params, int setting);

/// Logic-1 charging time constant (r_off || r_pu_eq) * c_bus.
[[nodiscard]] double rise_time_constant(const CircuitParams& params, int setting);

/// Forward model of the bench measurements, for round-trip checks.
[[nodiscard]] BenchMeasurements synthesize_measurements(const CircuitParams& params, int setting_min, int setting_max);

/// Pr(N(v, sigma) <= v_th).
[[nodiscard]] double sampling_error_probability(double v, double v_th, double sigma) noexcept;

/// End-of-cycle SDA voltage for each transmitted bit, in transmission order
/// (index 0 is the MSB). The line starts at the nominal logic-0 level.
[[nodiscard]] std::array<double, kByteBits> sampled_voltages(WordValue byte, const DcpProfile& profile,
                                                             const CircuitParams& params);

/// p^x_{i,down} indexed by bit position i (LSB = 0). Zero for 0-bits; p_up is always 0.
[[nodiscard]] std::array<double, kByteBits> byte_error_profile(WordValue byte, const DcpProfile& profile,
                                                               const CircuitParams& params);

/// Word-dependent 8-bit channel tabulated over all 256 bytes.
[[nodiscard]] ChannelModel channel_from_profile(const DcpProfile& profile, const CircuitParams& params);

/// First-order conduction plus switching power, in watts:
/// duty0 * v_supply * (v_supply - v0) / r_pu_eq + f_switch * c_bus * v_supply^2.
/// Trend model only.
[[nodiscard]] double power_estimate(const CircuitParams& params, int setting, double duty0, double f_switch);

}  // namespace bitadapt::i2c
