#include "bitadapt_cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bitadapt/distortion.hpp"
#include "bitadapt/errors.hpp"
#include "bitadapt/serialization.hpp"
#include "bitadapt_cli/ingest.hpp"
#include "json_fields.hpp"

namespace bitadapt::cli {

using detail::get_or;
using detail::section;

namespace {

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

json search_json(const SearchResult& r) {
  json j = {{"best", io::to_json(r.best)},
            {"benefit", r.benefit},
            {"evaluations", r.evaluations},
            {"feasible", r.feasible},
            {"induced", io::to_json(r.induced)}};
  if (!r.step_benefits.empty()) j["step_benefits"] = r.step_benefits;
  return j;
}

}  // namespace

CommandOutput run_distortion(const Scenario& s) {
  s.validate();
  const auto input = resolve_input(s);
  const auto channel = resolve_channel(s);
  const auto dist = distortion_pmf_fast(channel, input);
  CommandOutput out;
  out.result = {{"scenario", to_json(s)},
                {"distribution", io::to_json(dist)},
                {"mean_distortion", dist.mean()},
                {"average_benefit", average_benefit(channel, input)}};
  out.curves.add_indexed("analytic", to_vector(dist.tail()));
  if (s.monte_carlo_samples > 0) {
    const auto mc = monte_carlo_distortion(channel, input, s.monte_carlo_samples, *s.seed);
    out.result["monte_carlo"] = io::to_json(mc);
    out.curves.add_indexed("monte-carlo", to_vector(mc.tail()));
  }
  return out;
}

CommandOutput run_optimize(const Scenario& s) {
  s.validate();
  require(s.search != SearchMode::None, ErrorKind::InvalidArgument, "optimize needs a search mode");
  const auto input = resolve_input(s);
  const auto rc = resolve_constraint(s);
  require(rc.has_value(), ErrorKind::InvalidArgument, "optimize needs a constraint");
  CommandOutput out;
  out.result = {{"scenario", to_json(s)}, {"constraint", io::to_json(rc->constraint)}};
  out.curves.add_indexed("constraint", to_vector(rc->constraint.values()));
  bool feasible = true;
  if (s.search == SearchMode::BitIndependent || s.search == SearchMode::Both) {
    ExhaustiveOptions opts;
    opts.resolution_log2 = s.resolution_log2;
    const auto r = exhaustive_search_bit_independent(input, rc->constraint, opts);
    feasible = feasible && r.feasible;
    out.result["bit_independent"] = search_json(r);
    out.curves.add_indexed("bit-independent", to_vector(r.induced.tail()));
  }
  if (s.search == SearchMode::BitLevel || s.search == SearchMode::Both) {
    AdaptiveOptions opts;
    opts.final_resolution_log2 = std::max(s.resolution_log2, opts.initial_resolution_log2);
    opts.symmetric_neighborhood = s.symmetric_neighborhood;
    const auto r = adaptive_search_bit_level(input, rc->constraint, opts);
    feasible = feasible && r.feasible;
    out.result["bit_level"] = search_json(r);
    out.curves.add_indexed("bit-level", to_vector(r.induced.tail()));
  }
  if (!rc->p_rand.empty()) {
    const auto oracle = oracle_tail(rc->p_rand, input);
    out.result["p_rand"] = rc->p_rand;
    out.result["oracle"] = {{"benefit", 2.0 * benefit(rc->p_rand)}, {"induced", io::to_json(oracle)}};
    out.curves.add_indexed("oracle", to_vector(oracle.tail()));
  }
  out.result["feasible"] = feasible;
  return out;
}

CommandOutput run_scenario(const Scenario& s) {
  return s.search == SearchMode::None ? run_distortion(s) : run_optimize(s);
}

json to_json(const SweepConfig& c) {
  return {{"circuit", io::to_json(c.circuit)}, {"settings", c.settings}, {"sigmas", c.sigmas},
          {"nominal", c.nominal},             {"input", to_json(c.input)}, {"worst_case", c.worst_case}};
}

SweepConfig parse_sweep_config(const json& j) {
  SweepConfig c;
  if (j.contains("circuit")) c.circuit = io::parse_circuit_params(j.at("circuit"));
  c.settings = get_or<std::vector<int>>(j, "settings", c.settings);
  c.sigmas = get_or<std::vector<double>>(j, "sigmas", c.sigmas);
  c.nominal = get_or<int>(j, "nominal", c.nominal);
  c.input = parse_input_source(section(j, "input"));
  c.worst_case = get_or<bool>(j, "worst_case", c.worst_case);
  return c;
}

CommandOutput run_i2c_sweep(const SweepConfig& c) {
  c.circuit.validate();
  require(!c.settings.empty() && !c.sigmas.empty(), ErrorKind::InvalidArgument, "sweep needs settings and sigmas");
  const auto input = resolve_input(c.input, i2c::kByteBits);
  CommandOutput out;
  out.result = {{"scenario", to_json(c)}};
  json curves = json::array();
  for (double sigma : c.sigmas) {
    auto params = c.circuit;
    params.sigma_n = sigma;
    params.validate();
    for (int setting : c.settings) {
      const auto profile = i2c::DcpProfile::fixed(setting, c.nominal);
      const auto channel = i2c::channel_from_profile(profile, params);
      const auto dist = distortion_pmf_fast(channel, input);
      double lowest = params.v_supply;
      for (WordValue x = 0; x < 256; ++x) {
        const auto v = i2c::sampled_voltages(x, profile, params);
        for (int j = 0; j < i2c::kByteBits; ++j)
          if (((x >> (i2c::kByteBits - 1 - j)) & 1U) != 0) lowest = std::min(lowest, v[j]);
      }
      const auto levels = i2c::steady_state_levels(params, setting);
      const std::string label = "setting=" + std::to_string(setting) + " sigma=" + short_number(sigma);
      curves.push_back({{"label", label},
                        {"setting", setting},
                        {"sigma_n", sigma},
                        {"r_dcp", params.r_dcp(setting)},
                        {"v0", levels.v0},
                        {"v1", levels.v1},
                        {"lowest_sampled_one", lowest},
                        {"all_ones_above_threshold", lowest > params.v_th},
                        {"distribution", io::to_json(dist)}});
      out.curves.add_indexed(label, to_vector(dist.tail()));
    }
  }
  if (c.worst_case) {
    std::vector<double> line(256);
    for (std::size_t m = 0; m < 256; ++m) line[m] = (255.0 - static_cast<double>(m)) / 256.0;
    out.curves.add_indexed("worst-case", line);
  }
  out.result["curves"] = std::move(curves);
  return out;
}

json to_json(const PowerSweepConfig& c) {
  return {{"circuit", io::to_json(c.circuit)}, {"settings", c.settings}, {"duty0", c.duty0}, {"f_switch", c.f_switch}};
}

PowerSweepConfig parse_power_sweep_config(const json& j) {
  PowerSweepConfig c;
  if (j.contains("circuit")) c.circuit = io::parse_circuit_params(j.at("circuit"));
  c.settings = get_or<std::vector<int>>(j, "settings", c.settings);
  c.duty0 = get_or<std::vector<double>>(j, "duty0", c.duty0);
  c.f_switch = get_or<std::vector<double>>(j, "f_switch", c.f_switch);
  return c;
}

CommandOutput run_power_sweep(const PowerSweepConfig& c) {
  c.circuit.validate();
  std::vector<int> settings = c.settings;
  if (settings.empty())
    for (const auto& [k, ohms] : c.circuit.dcp_table) settings.push_back(k);
  CommandOutput out;
  out.curves.abscissa = "setting";
  std::vector<double> xs;
  json r_dcp = json::array();
  for (int s : settings) {
    xs.push_back(s);
    r_dcp.push_back(c.circuit.r_dcp(s));
  }
  for (double duty : c.duty0) {
    for (double f : c.f_switch) {
      std::vector<double> watts;
      for (int s : settings) watts.push_back(i2c::power_estimate(c.circuit, s, duty, f));
      out.curves.add("duty0=" + short_number(duty) + " f_switch=" + short_number(f), xs, std::move(watts));
    }
  }
  out.result = {{"scenario", to_json(c)}, {"settings", settings}, {"r_dcp", std::move(r_dcp)}};
  return out;
}

json to_json(const FsmTraceConfig& c) {
  return {{"word_length", c.machine.word_length},
          {"selection_bits", c.machine.selection_bits},
          {"registers", c.machine.registers},
          {"words", c.words},
          {"cycles", c.cycles},
          {"lead_in", c.lead_in},
          {"stimulus", c.stimulus_path}};
}

FsmTraceConfig parse_fsm_trace_config(const json& j) {
  FsmTraceConfig c;
  c.machine.word_length = get_or<int>(j, "word_length", c.machine.word_length);
  c.machine.selection_bits = get_or<int>(j, "selection_bits", c.machine.selection_bits);
  c.machine.registers = get_or<std::vector<fsm::Selection>>(j, "registers", {});
  c.words = get_or<std::vector<WordValue>>(j, "words", {});
  c.cycles = get_or<std::uint64_t>(j, "cycles", 0);
  c.lead_in = get_or<std::uint64_t>(j, "lead_in", 1);
  c.stimulus_path = get_or<std::string>(j, "stimulus", "");
  return c;
}

std::string run_fsm_trace(const FsmTraceConfig& c, fsm::Trace* trace_out) {
  c.machine.validate();
  fsm::Trace trace;
  if (!c.stimulus_path.empty()) {
    std::ifstream in(c.stimulus_path);
    require(static_cast<bool>(in), ErrorKind::Io, "cannot open stimulus file " + c.stimulus_path);
    trace = fsm::simulate(c.machine, fsm::read_stimulus(in));
  } else {
    const std::uint64_t per_word = static_cast<std::uint64_t>(c.machine.word_length) + 1;
    const std::uint64_t cycles = c.cycles > 0 ? c.cycles : c.lead_in + per_word * c.words.size() + 1;
    trace = fsm::simulate_transaction(c.machine, c.words, cycles, c.lead_in);
  }
  std::ostringstream text;
  text << "# " << to_json(c).dump() << "\n";
  fsm::write_trace(text, trace);
  if (trace_out != nullptr) *trace_out = std::move(trace);
  return text.str();
}

CommandOutput run_estimate(const EstimateConfig& c) {
  const auto est = i2c::estimate_resistances(c.bench, c.v_supply);
  i2c::CircuitParams params;
  params.v_supply = c.v_supply;
  params.v_th = c.v_supply / 2.0;
  params.r_ipu = est.r_ipu;
  params.r_off = est.r_off;
  params.dcp_table = {{0, c.bench.r_dcp_min}, {1, c.bench.r_dcp_max}};
  CommandOutput out;
  out.result = {{"scenario", {{"bench", io::to_json(c.bench)}, {"v_supply", c.v_supply}}},
                {"ratio", est.ratio},
                {"r_ipu", est.r_ipu},
                {"r_off", est.r_off},
                {"rise_time_constants", i2c::kRiseTimeConstants}};
  if (c.bench.rise_min > 0.0) out.result["c_bus_from_rise_min"] = i2c::estimate_capacitance(c.bench.rise_min, params, 0);
  if (c.bench.rise_max > 0.0) out.result["c_bus_from_rise_max"] = i2c::estimate_capacitance(c.bench.rise_max, params, 1);
  const auto lo = i2c::steady_state_levels(params, 0);
  const auto hi = i2c::steady_state_levels(params, 1);
  out.result["model_v1_min"] = lo.v1;
  out.result["model_v1_max"] = hi.v1;
  return out;
}

CommandOutput run_ingest(const IngestConfig& c) {
  const auto set = read_samples(c.path, c.width, c.offset);
  const auto input = empirical_distribution(set);
  CommandOutput out;
  out.result = {{"scenario", {{"path", c.path}, {"width", c.width}, {"offset", c.offset}}},
                {"samples", set.samples.size()},
                {"rejected", set.rejected},
                {"distribution", io::to_json(input)}};
  out.curves.add_indexed("pmf", to_vector(input.pmf()));
  return out;
}

}  // namespace bitadapt::cli
