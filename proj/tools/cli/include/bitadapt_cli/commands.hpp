#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bitadapt/adaptation_fsm.hpp"
#include "bitadapt/i2c.hpp"
#include "bitadapt_cli/curves.hpp"
#include "bitadapt_cli/scenario.hpp"

namespace bitadapt::cli {

struct CommandOutput {
  json result;    // includes "scenario"
  Curves curves;  // plot data; may be empty
};

/// Distortion PMF/tail of the scenario's channel, optionally with a seeded
/// Monte Carlo comparison.
[[nodiscard]] CommandOutput run_distortion(const Scenario& s);

/// Constraint, search results and induced tails. Needs a constraint source.
/// result["feasible"] is false if any requested search found nothing feasible.
[[nodiscard]] CommandOutput run_optimize(const Scenario& s);

/// Dispatches on the search mode: none -> run_distortion, otherwise run_optimize.
[[nodiscard]] CommandOutput run_scenario(const Scenario& s);

// Fixed-profile tail curves over a set of DCP settings and noise levels.
struct SweepConfig {
  i2c::CircuitParams circuit = i2c::circuit_preset("isl23415-100k");
  std::vector<int> settings{8, 9, 10, 11, 12};
  std::vector<double> sigmas{0.020};
  int nominal = 1;
  InputSource input;
  bool worst_case = true;  // add the all-bits-drop line (255 - m) / 256
};
[[nodiscard]] json to_json(const SweepConfig& c);
[[nodiscard]] SweepConfig parse_sweep_config(const json& j);
[[nodiscard]] CommandOutput run_i2c_sweep(const SweepConfig& c);

// Power trend over DCP settings for each (duty0, f_switch) pair.
struct PowerSweepConfig {
  i2c::CircuitParams circuit = i2c::circuit_preset("isl23415-100k");
  std::vector<int> settings;  // empty: every setting in the table
  std::vector<double> duty0{0.5};
  std::vector<double> f_switch{200e3};
};
[[nodiscard]] json to_json(const PowerSweepConfig& c);
[[nodiscard]] PowerSweepConfig parse_power_sweep_config(const json& j);
[[nodiscard]] CommandOutput run_power_sweep(const PowerSweepConfig& c);

// Adaptation FSM trace for a word stream or an explicit stimulus.
struct FsmTraceConfig {
  fsm::AdaptationConfig machine;
  std::vector<WordValue> words;
  std::uint64_t cycles = 0;  // 0: lead-in + (L + 1) per word + 1
  std::uint64_t lead_in = 1;
  std::string stimulus_path;  // when set, overrides words/cycles
};
[[nodiscard]] json to_json(const FsmTraceConfig& c);
[[nodiscard]] FsmTraceConfig parse_fsm_trace_config(const json& j);
/// Trace file text, starting with a "# <config json>" line.
[[nodiscard]] std::string run_fsm_trace(const FsmTraceConfig& c, fsm::Trace* trace = nullptr);

// Circuit parameter estimation from bench measurements.
struct EstimateConfig {
  i2c::BenchMeasurements bench;
  double v_supply = 2.5;
};
[[nodiscard]] CommandOutput run_estimate(const EstimateConfig& c);

// Empirical input distribution from a sample file.
struct IngestConfig {
  std::string path;
  int width = 8;
  std::int64_t offset = 0;
};
[[nodiscard]] CommandOutput run_ingest(const IngestConfig& c);

}  // namespace bitadapt::cli
