#include "bitadapt_cli/scenario.hpp"

#include "bitadapt/errors.hpp"
#include "bitadapt/serialization.hpp"
#include "bitadapt_cli/ingest.hpp"
#include "json_fields.hpp"

namespace bitadapt::cli {

using detail::get_or;
using detail::section;

std::string to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::None: return "none";
    case SearchMode::BitIndependent: return "bit-independent";
    case SearchMode::BitLevel: return "bit-level";
    case SearchMode::Both: return "both";
  }
  return "none";
}

SearchMode parse_search_mode(const std::string& name) {
  if (name == "none") return SearchMode::None;
  if (name == "bit-independent") return SearchMode::BitIndependent;
  if (name == "bit-level") return SearchMode::BitLevel;
  if (name == "both") return SearchMode::Both;
  fail(ErrorKind::InvalidArgument, "unknown search mode '" + name + "'");
}

bool Scenario::stochastic() const noexcept {
  return monte_carlo_samples > 0 || constraint.kind == ConstraintSource::Kind::Generated;
}

void Scenario::validate() const {
  check_width(width);
  require(!stochastic() || seed.has_value(), ErrorKind::InvalidArgument,
          "a seed is required for Monte Carlo sampling and generated constraints");
  require(input.kind != InputSource::Kind::Point || input.value <= width_mask(width), ErrorKind::InvalidArgument,
          "point-mass value does not fit in the word width");
  require(channel.kind != ChannelSource::Kind::I2c || width == i2c::kByteBits, ErrorKind::WidthMismatch,
          "the I2C channel model is defined for 8-bit words");
  require(search == SearchMode::None || constraint.kind != ConstraintSource::Kind::None, ErrorKind::InvalidArgument,
          "a search needs a constraint");
  require(resolution_log2 >= 1 && resolution_log2 <= 20, ErrorKind::InvalidArgument,
          "resolution_log2 must lie in [1, 20]");
  if (channel.kind == ChannelSource::Kind::I2c) {
    channel.circuit.validate();
    channel.profile.validate(channel.circuit);
  }
}

json to_json(const InputSource& in) {
  switch (in.kind) {
    case InputSource::Kind::Uniform: return {{"kind", "uniform"}};
    case InputSource::Kind::Point: return {{"kind", "point"}, {"value", in.value}};
    case InputSource::Kind::Samples: return {{"kind", "samples"}, {"path", in.path}, {"offset", in.offset}};
    case InputSource::Kind::File: return {{"kind", "file"}, {"path", in.path}};
  }
  return {{"kind", "uniform"}};
}

InputSource parse_input_source(const json& in) {
  InputSource out;
  const auto kind = get_or<std::string>(in, "kind", "uniform");
  if (kind == "uniform") {
    out.kind = InputSource::Kind::Uniform;
  } else if (kind == "point") {
    out.kind = InputSource::Kind::Point;
    out.value = get_or<WordValue>(in, "value", 0);
  } else if (kind == "samples") {
    out.kind = InputSource::Kind::Samples;
    out.path = get_or<std::string>(in, "path", "");
    out.offset = get_or<std::int64_t>(in, "offset", 0);
  } else if (kind == "file") {
    out.kind = InputSource::Kind::File;
    out.path = get_or<std::string>(in, "path", "");
  } else {
    fail(ErrorKind::InvalidArgument, "unknown input kind '" + kind + "'");
  }
  return out;
}

InputDistribution resolve_input(const InputSource& in, int width) {
  switch (in.kind) {
    case InputSource::Kind::Uniform: return InputDistribution::uniform(width);
    case InputSource::Kind::Point:
      require(in.value <= width_mask(width), ErrorKind::InvalidArgument, "point-mass value does not fit in the word width");
      return InputDistribution::point_mass(width, in.value);
    case InputSource::Kind::Samples: return ingest_samples(in.path, width, in.offset);
    case InputSource::Kind::File: {
      auto d = io::parse_input_distribution(io::read_json_file(in.path));
      require(d.width() == width, ErrorKind::WidthMismatch, "input distribution width differs from the scenario");
      return d;
    }
  }
  fail(ErrorKind::InvalidArgument, "unhandled input kind");
}

json to_json(const Scenario& s) {
  const json input = to_json(s.input);
  json channel;
  switch (s.channel.kind) {
    case ChannelSource::Kind::BitIndependent:
      channel = {{"kind", "bit-independent"}, {"p_down", s.channel.p_down}, {"p_up", s.channel.p_up}};
      break;
    case ChannelSource::Kind::File: channel = {{"kind", "file"}, {"path", s.channel.path}}; break;
    case ChannelSource::Kind::I2c:
      channel = {{"kind", "i2c"}, {"circuit", io::to_json(s.channel.circuit)}, {"profile", io::to_json(s.channel.profile)}};
      break;
  }
  json constraint;
  switch (s.constraint.kind) {
    case ConstraintSource::Kind::None: constraint = {{"kind", "none"}}; break;
    case ConstraintSource::Kind::Unconstrained: constraint = {{"kind", "unconstrained"}}; break;
    case ConstraintSource::Kind::File: constraint = {{"kind", "file"}, {"path", s.constraint.path}}; break;
    case ConstraintSource::Kind::Generated: constraint = {{"kind", "generated"}}; break;
  }
  return {{"width", s.width},
          {"input", input},
          {"channel", channel},
          {"constraint", constraint},
          {"search", to_string(s.search)},
          {"resolution_log2", s.resolution_log2},
          {"symmetric_neighborhood", s.symmetric_neighborhood},
          {"monte_carlo_samples", s.monte_carlo_samples},
          {"seed", s.seed ? json(*s.seed) : json(nullptr)}};
}

Scenario parse_scenario(const json& j) {
  require(j.is_object(), ErrorKind::InvalidArgument, "scenario must be a JSON object");
  Scenario s;
  s.width = get_or<int>(j, "width", s.width);

  s.input = parse_input_source(section(j, "input"));

  const json& ch = section(j, "channel");
  const auto ch_kind = get_or<std::string>(ch, "kind", "bit-independent");
  if (ch_kind == "bit-independent") {
    s.channel.kind = ChannelSource::Kind::BitIndependent;
    s.channel.p_down = get_or<double>(ch, "p_down", 0.0);
    s.channel.p_up = get_or<double>(ch, "p_up", 0.0);
  } else if (ch_kind == "file") {
    s.channel.kind = ChannelSource::Kind::File;
    s.channel.path = get_or<std::string>(ch, "path", "");
  } else if (ch_kind == "i2c") {
    s.channel.kind = ChannelSource::Kind::I2c;
    if (ch.contains("circuit")) s.channel.circuit = io::parse_circuit_params(ch.at("circuit"));
    if (ch.contains("profile")) s.channel.profile = io::parse_dcp_profile(ch.at("profile"));
  } else {
    fail(ErrorKind::InvalidArgument, "unknown channel kind '" + ch_kind + "'");
  }

  const json& co = section(j, "constraint");
  const auto co_kind = get_or<std::string>(co, "kind", "none");
  if (co_kind == "none") {
    s.constraint.kind = ConstraintSource::Kind::None;
  } else if (co_kind == "unconstrained") {
    s.constraint.kind = ConstraintSource::Kind::Unconstrained;
  } else if (co_kind == "file") {
    s.constraint.kind = ConstraintSource::Kind::File;
    s.constraint.path = get_or<std::string>(co, "path", "");
  } else if (co_kind == "generated") {
    s.constraint.kind = ConstraintSource::Kind::Generated;
  } else {
    fail(ErrorKind::InvalidArgument, "unknown constraint kind '" + co_kind + "'");
  }

  s.search = parse_search_mode(get_or<std::string>(j, "search", "none"));
  s.resolution_log2 = get_or<int>(j, "resolution_log2", s.resolution_log2);
  s.symmetric_neighborhood = get_or<bool>(j, "symmetric_neighborhood", false);
  s.monte_carlo_samples = get_or<std::uint64_t>(j, "monte_carlo_samples", 0);
  if (j.contains("seed") && !j.at("seed").is_null()) s.seed = get_or<std::uint64_t>(j, "seed", 0);
  return s;
}

InputDistribution resolve_input(const Scenario& s) { return resolve_input(s.input, s.width); }

ChannelModel resolve_channel(const Scenario& s) {
  switch (s.channel.kind) {
    case ChannelSource::Kind::BitIndependent:
      return ChannelModel::independent(std::vector<double>(s.width, s.channel.p_down),
                                       std::vector<double>(s.width, s.channel.p_up));
    case ChannelSource::Kind::File: {
      auto ch = io::parse_channel(io::read_json_file(s.channel.path));
      require(ch.width() == s.width, ErrorKind::WidthMismatch, "channel width differs from the scenario");
      return ch;
    }
    case ChannelSource::Kind::I2c: return i2c::channel_from_profile(s.channel.profile, s.channel.circuit);
  }
  fail(ErrorKind::InvalidArgument, "unhandled channel kind");
}

std::optional<RandomConstraint> resolve_constraint(const Scenario& s) {
  switch (s.constraint.kind) {
    case ConstraintSource::Kind::None: return std::nullopt;
    case ConstraintSource::Kind::Unconstrained: return RandomConstraint{ConstraintTail::unconstrained(s.width), {}};
    case ConstraintSource::Kind::File: {
      auto c = io::parse_constraint(io::read_json_file(s.constraint.path));
      require(c.width() == s.width, ErrorKind::WidthMismatch, "constraint width differs from the scenario");
      return RandomConstraint{std::move(c), {}};
    }
    case ConstraintSource::Kind::Generated: {
      require(s.seed.has_value(), ErrorKind::InvalidArgument, "a generated constraint needs a seed");
      return generate_random_constraint(s.width, *s.seed);
    }
  }
  return std::nullopt;
}

}  // namespace bitadapt::cli
