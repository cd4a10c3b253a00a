#include "bitadapt/adaptation_fsm.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "bitadapt/errors.hpp"

namespace bitadapt::fsm {

void AdaptationConfig::validate() const {
  require(word_length >= 1, ErrorKind::InvalidArgument, "word length must be at least 1");
  require(selection_bits >= 1 && selection_bits <= 32, ErrorKind::InvalidArgument,
          "selection width must be in [1, 32]");
  require(registers.size() == static_cast<std::size_t>(word_length) + 1, ErrorKind::InvalidArgument,
          "expected L + 1 = " + std::to_string(word_length + 1) + " registers");
  const std::uint64_t limit = std::uint64_t{1} << selection_bits;
  for (Selection r : registers)
    require(r < limit, ErrorKind::InvalidArgument, "register value exceeds the selection width");
}

StepResult step(const FsmState& state, const AdaptationConfig& config, bool scl_negedge, bool start) {
  FsmState next = state;
  if (scl_negedge) {
    switch (state.phase) {
      case Phase::Idle:
        if (start) next = {Phase::Counting, 1};
        break;
      case Phase::Counting:
        // start is ignored mid-word
        next = state.counter < config.word_length ? FsmState{Phase::Counting, state.counter + 1}
                                                  : FsmState{Phase::Idle, 0};
        break;
    }
  }
  return {next, config.reg(next.counter)};
}

Trace simulate(const AdaptationConfig& config, std::span<const Stimulus> stimulus) {
  config.validate();
  Trace trace;
  trace.reserve(stimulus.size());
  FsmState state;
  for (const auto& s : stimulus) {
    const auto r = step(state, config, s.scl_negedge, s.start);
    state = r.state;
    trace.push_back({s.cycle, s.scl_negedge, s.start, r.selection});
  }
  return trace;
}

Trace simulate_transaction(const AdaptationConfig& config, std::span<const WordValue> words, std::uint64_t cycles,
                           std::uint64_t lead_in) {
  config.validate();
  for (WordValue w : words)
    require(config.word_length > 31 || w < (WordValue{1} << config.word_length), ErrorKind::InvalidArgument,
            "word does not fit in the configured word length");
  Trace trace;
  trace.reserve(cycles);
  FsmState state;
  std::size_t pending = 0;
  for (std::uint64_t c = 0; c < cycles; ++c) {
    const bool start = state.phase == Phase::Idle && pending < words.size() && c >= lead_in;
    const auto r = step(state, config, true, start);
    if (start) ++pending;
    state = r.state;
    trace.push_back({c, true, start, r.selection});
  }
  return trace;
}

std::vector<i2c::DcpProfile> profiles_from_trace(const AdaptationConfig& config, const Trace& trace) {
  config.validate();
  require(config.word_length == i2c::kByteBits, ErrorKind::InvalidArgument, "I2C profiles need 8-bit words");
  std::vector<i2c::DcpProfile> profiles;
  FsmState state;
  i2c::DcpProfile current;
  current.nominal = static_cast<int>(config.reg(0));
  for (const auto& e : trace) {
    const auto r = step(state, config, e.scl_negedge, e.start);
    if (r.state.phase == Phase::Counting && r.state != state) {
      current.settings[static_cast<std::size_t>(r.state.counter - 1)] = static_cast<int>(e.selection);
      if (r.state.counter == config.word_length) profiles.push_back(current);
    }
    state = r.state;
  }
  return profiles;
}

void write_trace(std::ostream& out, const Trace& trace) {
  for (const auto& e : trace)
    out << e.cycle << ' ' << (e.scl_negedge ? 1 : 0) << ' ' << (e.start ? 1 : 0) << ' ' << e.selection << '\n';
}

std::vector<Stimulus> read_stimulus(std::istream& in) {
  std::vector<Stimulus> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::uint64_t cycle = 0;
    int edge = 0;
    int start = 0;
    fields >> cycle >> edge >> start;
    require(!fields.fail() && (edge == 0 || edge == 1) && (start == 0 || start == 1), ErrorKind::InvalidArgument,
            "malformed stimulus at line " + std::to_string(lineno));
    out.push_back({cycle, edge == 1, start == 1});
  }
  return out;
}

}  // namespace bitadapt::fsm
