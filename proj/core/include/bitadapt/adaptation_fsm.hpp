#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "bitadapt/i2c.hpp"
#include "bitadapt/word.hpp"

namespace bitadapt::fsm {

using Selection = std::uint32_t;

// Register file of the adaptation module: R_0 (idle/protocol default) and
// R_1..R_L, one selection per bit position of a word.
struct AdaptationConfig {
  int word_length = 8;
  int selection_bits = 8;
  std::vector<Selection> registers;  // L + 1 entries

  void validate() const;
  [[nodiscard]] Selection reg(int i) const { return registers[static_cast<std::size_t>(i)]; }
};

enum class Phase { Idle, Counting };

struct FsmState {
  Phase phase = Phase::Idle;
  int counter = 0;

  friend bool operator==(const FsmState&, const FsmState&) = default;
};

struct StepResult {
  FsmState state;
  Selection selection;
};

/// One clock event. Transitions happen only on an SCL negative edge: idle with
/// start -> counting at 1; counting below L -> counter + 1; counting at L -> idle.
/// The selection output is R_counter of the resulting state.
[[nodiscard]] StepResult step(const FsmState& state, const AdaptationConfig& config, bool scl_negedge, bool start);

struct Stimulus {
  std::uint64_t cycle = 0;
  bool scl_negedge = false;
  bool start = false;
};

struct TraceEntry {
  std::uint64_t cycle = 0;
  bool scl_negedge = false;
  bool start = false;
  Selection selection = 0;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

using Trace = std::vector<TraceEntry>;

/// Applies the stimulus in order from the idle state.
[[nodiscard]] Trace simulate(const AdaptationConfig& config, std::span<const Stimulus> stimulus);

/// Harness: one SCL negative edge per cycle; `start` is raised whenever the
/// machine is idle, a word is pending and cycle >= lead_in. The trace has
/// exactly `cycles` entries; words that do not fit are dropped.
[[nodiscard]] Trace simulate_transaction(const AdaptationConfig& config, std::span<const WordValue> words,
                                         std::uint64_t cycles, std::uint64_t lead_in = 1);

/// Selections applied during each complete word in the trace, as I2C profiles
/// (word_length must be 8). The nominal setting is R_0.
[[nodiscard]] std::vector<i2c::DcpProfile> profiles_from_trace(const AdaptationConfig& config, const Trace& trace);

// Line format: "<cycle> <scl_edge:0|1> <start:0|1> <selection>".
void write_trace(std::ostream& out, const Trace& trace);
/// Reads stimulus lines "<cycle> <scl_edge> <start>" (a fourth column is ignored).
/// Blank lines and lines starting with '#' are skipped.
[[nodiscard]] std::vector<Stimulus> read_stimulus(std::istream& in);

}  // namespace bitadapt::fsm
