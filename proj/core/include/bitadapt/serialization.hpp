#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "bitadapt/channel.hpp"
#include "bitadapt/distribution.hpp"
#include "bitadapt/i2c.hpp"
#include "bitadapt/optimizer.hpp"

namespace bitadapt::io {

using nlohmann::json;

// {"width": L, "pmf": [...]}
[[nodiscard]] json to_json(const InputDistribution& input);
// {"width": L, "pmf": [...], "tail": [...]}; the tail is informational on read.
[[nodiscard]] json to_json(const DistortionDistribution& dist);
// {"variant": "independent", "p_down": [...], "p_up": [...]} or
// {"variant": "dependent", "width": L, "p_down": [[...L] x 2^L], "p_up": [...]}
[[nodiscard]] json to_json(const ChannelModel& channel);

[[nodiscard]] InputDistribution parse_input_distribution(const json& j);
[[nodiscard]] DistortionDistribution parse_distortion_distribution(const json& j);
[[nodiscard]] ChannelModel parse_channel(const json& j);

[[nodiscard]] json to_json(const ConstraintTail& constraint);
[[nodiscard]] json to_json(const ProbabilityVector& p);
[[nodiscard]] ConstraintTail parse_constraint(const json& j);

// SI units. r_ipu is null when absent (infinite). A preset DCP table is written
// by name ("dcp_preset"), otherwise as "dcp_table": [[setting, ohms], ...].
// Missing fields take the CircuitParams defaults; v_th defaults to v_supply / 2.
[[nodiscard]] json to_json(const i2c::CircuitParams& params);
[[nodiscard]] i2c::CircuitParams parse_circuit_params(const json& j);
// {"settings": [8 indices, MSB first], "nominal": index}
[[nodiscard]] json to_json(const i2c::DcpProfile& profile);
[[nodiscard]] i2c::DcpProfile parse_dcp_profile(const json& j);
[[nodiscard]] json to_json(const i2c::BenchMeasurements& m);
[[nodiscard]] i2c::BenchMeasurements parse_bench_measurements(const json& j);

[[nodiscard]] json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace bitadapt::io
