#include "bitadapt/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "bitadapt/errors.hpp"

namespace bitadapt::io {

namespace {

template <typename T>
T field(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorKind::InvalidArgument, std::string("missing JSON field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("bad JSON field '") + key + "': " + e.what());
  }
}

}  // namespace

json to_json(const InputDistribution& input) {
  return {{"width", input.width()}, {"pmf", std::vector<double>(input.pmf().begin(), input.pmf().end())}};
}

json to_json(const DistortionDistribution& dist) {
  return {{"width", dist.width()},
          {"pmf", std::vector<double>(dist.pmf().begin(), dist.pmf().end())},
          {"tail", std::vector<double>(dist.tail().begin(), dist.tail().end())}};
}

json to_json(const ChannelModel& channel) {
  if (const auto* ind = channel.as_independent())
    return {{"variant", "independent"}, {"p_down", ind->p_down}, {"p_up", ind->p_up}};
  const int width = channel.width();
  json down = json::array();
  json up = json::array();
  for (WordValue x = 0; x < word_count(width); ++x) {
    std::vector<double> d(width);
    std::vector<double> u(width);
    for (int i = 0; i < width; ++i) {
      d[i] = channel.p_down(x, i);
      u[i] = channel.p_up(x, i);
    }
    down.push_back(std::move(d));
    up.push_back(std::move(u));
  }
  return {{"variant", "dependent"}, {"width", width}, {"p_down", std::move(down)}, {"p_up", std::move(up)}};
}

InputDistribution parse_input_distribution(const json& j) {
  return {field<int>(j, "width"), field<std::vector<double>>(j, "pmf")};
}

DistortionDistribution parse_distortion_distribution(const json& j) {
  return {field<int>(j, "width"), field<std::vector<double>>(j, "pmf")};
}

ChannelModel parse_channel(const json& j) {
  const auto variant = field<std::string>(j, "variant");
  if (variant == "independent")
    return ChannelModel::independent(field<std::vector<double>>(j, "p_down"), field<std::vector<double>>(j, "p_up"));
  require(variant == "dependent", ErrorKind::InvalidArgument, "unknown channel variant '" + variant + "'");
  const int width = field<int>(j, "width");
  check_width(width);
  const auto rows_down = field<std::vector<std::vector<double>>>(j, "p_down");
  const auto rows_up = field<std::vector<std::vector<double>>>(j, "p_up");
  require(rows_down.size() == word_count(width) && rows_up.size() == word_count(width), ErrorKind::WidthMismatch,
          "dependent channel needs 2^L rows");
  std::vector<double> down;
  std::vector<double> up;
  for (std::size_t x = 0; x < rows_down.size(); ++x) {
    require(rows_down[x].size() == static_cast<std::size_t>(width) && rows_up[x].size() == static_cast<std::size_t>(width),
            ErrorKind::WidthMismatch, "dependent channel rows need L entries");
    down.insert(down.end(), rows_down[x].begin(), rows_down[x].end());
    up.insert(up.end(), rows_up[x].begin(), rows_up[x].end());
  }
  return ChannelModel::dependent(width, std::move(down), std::move(up));
}

json to_json(const ConstraintTail& constraint) {
  return {{"width", constraint.width()},
          {"tail", std::vector<double>(constraint.values().begin(), constraint.values().end())}};
}

json to_json(const ProbabilityVector& p) {
  return {{"width", p.width()},
          {"resolution_log2", p.resolution_log2()},
          {"p_down", std::vector<double>(p.p_down().begin(), p.p_down().end())},
          {"p_up", std::vector<double>(p.p_up().begin(), p.p_up().end())}};
}

ConstraintTail parse_constraint(const json& j) {
  return {field<int>(j, "width"), field<std::vector<double>>(j, "tail")};
}

json to_json(const i2c::CircuitParams& params) {
  json j = {{"v_supply", params.v_supply}, {"v_th", params.v_th},     {"r_off", params.r_off},
            {"r_on", params.r_on},         {"c_bus", params.c_bus},   {"sigma_n", params.sigma_n},
            {"t_clk", params.t_clk}};
  j["r_ipu"] = std::isinf(params.r_ipu) ? json(nullptr) : json(params.r_ipu);
  if (!params.dcp_preset.empty()) {
    j["dcp_preset"] = params.dcp_preset;
  } else {
    json table = json::array();
    for (const auto& [setting, ohms] : params.dcp_table) table.push_back({setting, ohms});
    j["dcp_table"] = std::move(table);
  }
  return j;
}

i2c::CircuitParams parse_circuit_params(const json& j) {
  require(j.is_object(), ErrorKind::InvalidArgument, "circuit parameters must be a JSON object");
  i2c::CircuitParams p;
  const auto number = [&](const char* key, double& out) {
    if (j.contains(key)) out = field<double>(j, key);
  };
  number("v_supply", p.v_supply);
  p.v_th = p.v_supply / 2.0;
  number("v_th", p.v_th);
  number("r_off", p.r_off);
  number("r_on", p.r_on);
  number("c_bus", p.c_bus);
  number("sigma_n", p.sigma_n);
  number("t_clk", p.t_clk);
  if (j.contains("r_ipu") && !j.at("r_ipu").is_null()) p.r_ipu = field<double>(j, "r_ipu");
  if (j.contains("dcp_preset")) {
    p.dcp_preset = field<std::string>(j, "dcp_preset");
    p.dcp_table = i2c::dcp_preset(p.dcp_preset);
  } else {
    for (const auto& row : field<std::vector<std::pair<int, double>>>(j, "dcp_table")) p.dcp_table.insert(row);
  }
  p.validate();
  return p;
}

json to_json(const i2c::DcpProfile& profile) {
  return {{"settings", profile.settings}, {"nominal", profile.nominal}};
}

i2c::DcpProfile parse_dcp_profile(const json& j) {
  i2c::DcpProfile p;
  const auto settings = field<std::vector<int>>(j, "settings");
  require(settings.size() == p.settings.size(), ErrorKind::InvalidArgument, "DCP profile needs 8 settings");
  std::copy(settings.begin(), settings.end(), p.settings.begin());
  p.nominal = field<int>(j, "nominal");
  return p;
}

json to_json(const i2c::BenchMeasurements& m) {
  return {{"v1_min", m.v1_min},     {"v1_max", m.v1_max},     {"v0_min", m.v0_min},   {"v0_max", m.v0_max},
          {"rise_min", m.rise_min}, {"rise_max", m.rise_max}, {"fall_min", m.fall_min}, {"fall_max", m.fall_max},
          {"r_dcp_min", m.r_dcp_min}, {"r_dcp_max", m.r_dcp_max}};
}

i2c::BenchMeasurements parse_bench_measurements(const json& j) {
  i2c::BenchMeasurements m;
  m.v1_min = field<double>(j, "v1_min");
  m.v1_max = field<double>(j, "v1_max");
  m.r_dcp_min = field<double>(j, "r_dcp_min");
  m.r_dcp_max = field<double>(j, "r_dcp_max");
  const auto optional = [&](const char* key, double& out) {
    if (j.contains(key)) out = field<double>(j, key);
  };
  optional("v0_min", m.v0_min);
  optional("v0_max", m.v0_max);
  optional("rise_min", m.rise_min);
  optional("rise_max", m.rise_max);
  optional("fall_min", m.fall_min);
  optional("fall_max", m.fall_max);
  return m;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::Io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidArgument, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  require(out.good(), ErrorKind::Io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  require(out.good(), ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace bitadapt::io
