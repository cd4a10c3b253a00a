#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bitadapt/channel.hpp"
#include "bitadapt/distribution.hpp"
#include "bitadapt/i2c.hpp"
#include "bitadapt/optimizer.hpp"

namespace bitadapt::cli {

using nlohmann::json;

struct InputSource {
  enum class Kind { Uniform, Point, Samples, File };
  Kind kind = Kind::Uniform;
  WordValue value = 0;      // Point
  std::string path;         // Samples (CSV) or File (distribution JSON)
  std::int64_t offset = 0;  // Samples: added to every record
};

struct ChannelSource {
  enum class Kind { BitIndependent, File, I2c };
  Kind kind = Kind::BitIndependent;
  double p_down = 0.0;  // BitIndependent: same at every bit
  double p_up = 0.0;
  std::string path;     // File: channel JSON
  i2c::CircuitParams circuit = i2c::circuit_preset("isl23415-100k");
  i2c::DcpProfile profile = i2c::DcpProfile::fixed(10, 1);
};

struct ConstraintSource {
  enum class Kind { None, Unconstrained, File, Generated };
  Kind kind = Kind::None;
  std::string path;  // File: constraint JSON
};

enum class SearchMode { None, BitIndependent, BitLevel, Both };

// Everything needed to reproduce one distortion or optimization run.
struct Scenario {
  int width = 8;
  InputSource input;
  ChannelSource channel;
  ConstraintSource constraint;
  SearchMode search = SearchMode::None;
  std::uint64_t monte_carlo_samples = 0;
  std::optional<std::uint64_t> seed;
  int resolution_log2 = 7;
  bool symmetric_neighborhood = false;

  /// Throws InvalidArgument if a stochastic element has no seed or widths disagree.
  void validate() const;
  [[nodiscard]] bool stochastic() const noexcept;
};

[[nodiscard]] json to_json(const InputSource& in);
[[nodiscard]] InputSource parse_input_source(const json& j);
[[nodiscard]] InputDistribution resolve_input(const InputSource& in, int width);

[[nodiscard]] json to_json(const Scenario& s);
[[nodiscard]] Scenario parse_scenario(const json& j);

[[nodiscard]] InputDistribution resolve_input(const Scenario& s);
[[nodiscard]] ChannelModel resolve_channel(const Scenario& s);
[[nodiscard]] std::optional<RandomConstraint> resolve_constraint(const Scenario& s);

[[nodiscard]] std::string to_string(SearchMode mode);
[[nodiscard]] SearchMode parse_search_mode(const std::string& name);

}  // namespace bitadapt::cli
