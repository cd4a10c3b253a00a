#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bitadapt/errors.hpp"
#include "bitadapt/serialization.hpp"
#include "bitadapt_cli/commands.hpp"

namespace {

using namespace bitadapt;
using namespace bitadapt::cli;

constexpr int kExitValidation = 1;
constexpr int kExitInfeasible = 2;

// Circuit overrides shared by the I2C commands.
struct CircuitFlags {
  std::string dcp = "isl23415-100k";
  std::string circuit_file;
  std::optional<double> c_bus, sigma, r_off, r_ipu, r_on, v_supply, t_clk;

  void add(CLI::App* app) {
    app->add_option("--dcp", dcp, "DCP preset (isl23415-100k, isl23415-10k)");
    app->add_option("--circuit", circuit_file, "circuit parameter JSON; replaces the preset");
    app->add_option("--c-bus", c_bus, "bus capacitance [F]");
    app->add_option("--sigma", sigma, "receiver noise standard deviation [V]");
    app->add_option("--r-off", r_off, "pull-down off-resistance [ohm]");
    app->add_option("--r-ipu", r_ipu, "internal pull-up resistance [ohm]");
    app->add_option("--r-on", r_on, "driver on-resistance [ohm]");
    app->add_option("--v-supply", v_supply, "supply voltage [V]; threshold follows at half");
    app->add_option("--t-clk", t_clk, "bit period [s]");
  }

  i2c::CircuitParams resolve(i2c::CircuitParams base) const {
    if (!circuit_file.empty()) base = io::parse_circuit_params(io::read_json_file(circuit_file));
    else if (dcp != base.dcp_preset) base = i2c::circuit_preset(dcp);
    if (c_bus) base.c_bus = *c_bus;
    if (sigma) base.sigma_n = *sigma;
    if (r_off) base.r_off = *r_off;
    if (r_ipu) base.r_ipu = *r_ipu;
    if (r_on) base.r_on = *r_on;
    if (t_clk) base.t_clk = *t_clk;
    if (v_supply) {
      base.v_supply = *v_supply;
      base.v_th = *v_supply / 2.0;
    }
    return base;
  }
};

struct InputFlags {
  std::optional<std::string> kind;
  std::optional<WordValue> value;
  std::optional<std::string> path;
  std::optional<std::int64_t> offset;

  void add(CLI::App* app) {
    app->add_option("--input", kind, "uniform | point | samples | file")
        ->check(CLI::IsMember({"uniform", "point", "samples", "file"}));
    app->add_option("--value", value, "point-mass word");
    app->add_option("--input-path", path, "sample CSV or distribution JSON");
    app->add_option("--offset", offset, "added to every sample before range checking (offset-binary mapping)");
  }

  void apply(InputSource& in) const {
    if (kind) {
      if (*kind == "uniform") in.kind = InputSource::Kind::Uniform;
      else if (*kind == "point") in.kind = InputSource::Kind::Point;
      else if (*kind == "samples") in.kind = InputSource::Kind::Samples;
      else in.kind = InputSource::Kind::File;
    }
    if (value) in.value = *value;
    if (path) in.path = *path;
    if (offset) in.offset = *offset;
  }
};

struct ScenarioFlags {
  std::string file;
  std::optional<int> width;
  InputFlags input;
  std::optional<double> p_down, p_up;
  std::optional<std::string> channel_file;
  bool i2c = false;
  CircuitFlags circuit;
  std::optional<int> setting, nominal;
  std::optional<std::string> constraint;
  std::optional<std::string> constraint_file;
  std::optional<std::string> search;
  std::optional<int> resolution;
  bool symmetric = false;
  std::optional<std::uint64_t> monte_carlo;
  std::optional<std::uint64_t> seed;

  void add(CLI::App* app, bool optimize) {
    app->add_option("--scenario", file, "scenario JSON; flags override its fields");
    app->add_option("--width", width, "word length L");
    input.add(app);
    app->add_option("--p-down", p_down, "1->0 flip probability at every bit");
    app->add_option("--p-up", p_up, "0->1 flip probability at every bit");
    app->add_option("--channel-file", channel_file, "channel JSON");
    app->add_flag("--i2c", i2c, "use the I2C bus error model (L = 8)");
    circuit.add(app);
    app->add_option("--setting", setting, "DCP setting held for every bit");
    app->add_option("--nominal", nominal, "DCP setting outside the word");
    app->add_option("--seed", seed, "RNG seed; required for sampling and generated constraints");
    if (optimize) {
      app->add_option("--constraint", constraint, "unconstrained | file | generated")
          ->check(CLI::IsMember({"none", "unconstrained", "file", "generated"}));
      app->add_option("--constraint-file", constraint_file, "constraint tail JSON");
      app->add_option("--search", search, "bit-independent | bit-level | both")
          ->check(CLI::IsMember({"bit-independent", "bit-level", "both"}));
      app->add_option("--resolution", resolution, "final grid resolution 2^-r");
      app->add_flag("--symmetric", symmetric, "bit-level steps also try decrements");
    } else {
      app->add_option("--monte-carlo", monte_carlo, "number of simulated transmissions to compare against");
    }
  }

  Scenario resolve(bool optimize) const {
    Scenario s = file.empty() ? Scenario{} : parse_scenario(io::read_json_file(file));
    if (width) s.width = *width;
    input.apply(s.input);
    if (p_down || p_up) s.channel.kind = ChannelSource::Kind::BitIndependent;
    if (p_down) s.channel.p_down = *p_down;
    if (p_up) s.channel.p_up = *p_up;
    if (channel_file) {
      s.channel.kind = ChannelSource::Kind::File;
      s.channel.path = *channel_file;
    }
    if (i2c) s.channel.kind = ChannelSource::Kind::I2c;
    s.channel.circuit = circuit.resolve(s.channel.circuit);
    if (setting || nominal) {
      s.channel.profile = i2c::DcpProfile::fixed(setting.value_or(s.channel.profile.settings[0]),
                                                 nominal.value_or(s.channel.profile.nominal));
    }
    if (constraint) {
      if (*constraint == "none") s.constraint.kind = ConstraintSource::Kind::None;
      else if (*constraint == "unconstrained") s.constraint.kind = ConstraintSource::Kind::Unconstrained;
      else if (*constraint == "file") s.constraint.kind = ConstraintSource::Kind::File;
      else s.constraint.kind = ConstraintSource::Kind::Generated;
    }
    if (constraint_file) {
      s.constraint.kind = ConstraintSource::Kind::File;
      s.constraint.path = *constraint_file;
    }
    if (search) s.search = parse_search_mode(*search);
    if (optimize && s.search == SearchMode::None) s.search = SearchMode::Both;
    if (resolution) s.resolution_log2 = *resolution;
    if (symmetric) s.symmetric_neighborhood = true;
    if (monte_carlo) s.monte_carlo_samples = *monte_carlo;
    if (seed) s.seed = *seed;
    return s;
  }
};

// Without --out the result JSON goes to stdout; with it, <out>.csv and <out>.json.
void emit(const CommandOutput& out, const std::string& prefix) {
  if (prefix.empty()) {
    std::cout << out.result.dump(2) << "\n";
    return;
  }
  const json& scenario = out.result.at("scenario");
  json doc = curves_json(out.curves, scenario);
  doc["result"] = out.result;
  doc["result"].erase("scenario");
  write_text_file(prefix + ".csv", curves_csv(out.curves, scenario));
  write_text_file(prefix + ".json", doc.dump(2) + "\n");
}

json config_file(const std::string& path) { return path.empty() ? json::object() : io::read_json_file(path); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Value-distortion analysis and bit-error budgeting for approximate data links"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "bitadapt 0.1.0");

  std::string out_prefix;
  bool timing = false;
  app.add_option("--out", out_prefix, "output prefix for <out>.csv and <out>.json (fsm-trace: trace file)");
  app.add_flag("--timing", timing, "report wall time on stderr");

  ScenarioFlags dist_flags;
  auto* distortion = app.add_subcommand("distortion", "distortion PMF and tail of a channel");
  dist_flags.add(distortion, false);

  ScenarioFlags opt_flags;
  auto* optimize = app.add_subcommand("optimize", "maximize error probabilities under a tail constraint");
  opt_flags.add(optimize, true);

  std::string sweep_file;
  CircuitFlags sweep_circuit;
  std::vector<int> sweep_settings;
  std::vector<double> sweep_sigmas;
  std::optional<int> sweep_nominal;
  InputFlags sweep_input;
  bool no_worst_case = false;
  auto* sweep = app.add_subcommand("i2c-sweep", "tail curves over DCP settings and noise levels");
  sweep->add_option("--config", sweep_file, "sweep JSON; flags override its fields");
  sweep_circuit.add(sweep);
  sweep->add_option("--settings", sweep_settings, "DCP settings")->delimiter(',');
  sweep->add_option("--sigmas", sweep_sigmas, "noise levels [V]")->delimiter(',');
  sweep->add_option("--nominal", sweep_nominal, "DCP setting outside the word");
  sweep_input.add(sweep);
  sweep->add_flag("--no-worst-case", no_worst_case, "omit the all-bits-drop reference line");

  std::string power_file;
  CircuitFlags power_circuit;
  std::vector<int> power_settings;
  std::vector<double> power_duty, power_freq;
  auto* power = app.add_subcommand("power-sweep", "pull-up power over DCP settings");
  power->add_option("--config", power_file, "power sweep JSON; flags override its fields");
  power_circuit.add(power);
  power->add_option("--settings", power_settings, "DCP settings (default: all)")->delimiter(',');
  power->add_option("--duty0", power_duty, "fraction of time the line is held low")->delimiter(',');
  power->add_option("--f-switch", power_freq, "switching frequency [Hz]")->delimiter(',');

  std::string fsm_file;
  std::optional<int> fsm_length, fsm_sel_bits;
  std::vector<fsm::Selection> fsm_regs;
  std::vector<WordValue> fsm_words;
  std::optional<std::uint64_t> fsm_cycles, fsm_lead_in;
  std::optional<std::string> fsm_stimulus;
  auto* trace = app.add_subcommand("fsm-trace", "cycle trace of the adaptation state machine");
  trace->add_option("--config", fsm_file, "machine JSON; flags override its fields");
  trace->add_option("--word-length", fsm_length, "bits per word L");
  trace->add_option("--selection-bits", fsm_sel_bits, "register width");
  trace->add_option("--registers", fsm_regs, "R_0 .. R_L")->delimiter(',');
  trace->add_option("--words", fsm_words, "words to send back to back")->delimiter(',');
  trace->add_option("--cycles", fsm_cycles, "trace length (default: just long enough)");
  trace->add_option("--lead-in", fsm_lead_in, "idle cycles before the first start");
  trace->add_option("--stimulus", fsm_stimulus, "explicit stimulus file: cycle negedge start per line");

  IngestConfig ingest_cfg;
  auto* ingest = app.add_subcommand("ingest", "empirical input distribution from a sample CSV");
  ingest->add_option("path", ingest_cfg.path, "CSV, first column")->required();
  ingest->add_option("--width", ingest_cfg.width, "word length L");
  ingest->add_option("--offset", ingest_cfg.offset, "added to every sample (offset-binary mapping)");

  std::string bench_file;
  double v_supply = 2.5;
  auto* estimate = app.add_subcommand("estimate", "pull-up and off-resistance from bench measurements");
  estimate->add_option("bench", bench_file, "bench measurement JSON")->required();
  estimate->add_option("--v-supply", v_supply, "supply voltage [V]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  const auto started = std::chrono::steady_clock::now();
  int status = 0;
  try {
    if (*distortion) {
      emit(run_distortion(dist_flags.resolve(false)), out_prefix);
    } else if (*optimize) {
      const auto out = run_optimize(opt_flags.resolve(true));
      emit(out, out_prefix);
      if (!out.result.at("feasible").get<bool>()) {
        std::cerr << "bitadapt: no feasible point found\n";
        status = kExitInfeasible;
      }
    } else if (*sweep) {
      auto cfg = parse_sweep_config(config_file(sweep_file));
      cfg.circuit = sweep_circuit.resolve(cfg.circuit);
      if (!sweep_settings.empty()) cfg.settings = sweep_settings;
      if (!sweep_sigmas.empty()) cfg.sigmas = sweep_sigmas;
      if (sweep_nominal) cfg.nominal = *sweep_nominal;
      sweep_input.apply(cfg.input);
      if (no_worst_case) cfg.worst_case = false;
      emit(run_i2c_sweep(cfg), out_prefix);
    } else if (*power) {
      auto cfg = parse_power_sweep_config(config_file(power_file));
      cfg.circuit = power_circuit.resolve(cfg.circuit);
      if (!power_settings.empty()) cfg.settings = power_settings;
      if (!power_duty.empty()) cfg.duty0 = power_duty;
      if (!power_freq.empty()) cfg.f_switch = power_freq;
      emit(run_power_sweep(cfg), out_prefix);
    } else if (*trace) {
      auto cfg = parse_fsm_trace_config(config_file(fsm_file));
      if (fsm_length) cfg.machine.word_length = *fsm_length;
      if (fsm_sel_bits) cfg.machine.selection_bits = *fsm_sel_bits;
      if (!fsm_regs.empty()) cfg.machine.registers = fsm_regs;
      if (!fsm_words.empty()) cfg.words = fsm_words;
      if (fsm_cycles) cfg.cycles = *fsm_cycles;
      if (fsm_lead_in) cfg.lead_in = *fsm_lead_in;
      if (fsm_stimulus) cfg.stimulus_path = *fsm_stimulus;
      const auto text = run_fsm_trace(cfg);
      if (out_prefix.empty()) std::cout << text;
      else write_text_file(out_prefix, text);
    } else if (*ingest) {
      const auto out = run_ingest(ingest_cfg);
      if (out.result.at("rejected").get<std::uint64_t>() > 0)
        std::cerr << "bitadapt: " << out.result.at("rejected").get<std::uint64_t>() << " samples out of range\n";
      emit(out, out_prefix);
    } else if (*estimate) {
      emit(run_estimate({io::parse_bench_measurements(io::read_json_file(bench_file)), v_supply}), out_prefix);
    }
  } catch (const Error& e) {
    std::cerr << "bitadapt: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Infeasible:
      case ErrorKind::EstimationFailure:
      case ErrorKind::InconsistentMeasurements: return kExitInfeasible;
      default: return kExitValidation;
    }
  } catch (const json::exception& e) {
    std::cerr << "bitadapt: " << e.what() << "\n";
    return kExitValidation;
  }
  if (timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - started;
    std::fprintf(stderr, "wall time %.3f s\n", dt.count());
  }
  return status;
}
