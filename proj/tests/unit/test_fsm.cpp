#include <doctest.h>

#include <random>
#include <sstream>

#include "bitadapt/adaptation_fsm.hpp"
#include "bitadapt/errors.hpp"
#include "bitadapt/i2c.hpp"
#include "oracles.hpp"

using namespace bitadapt;
using namespace bitadapt::fsm;

namespace {

AdaptationConfig sample_config() {
  AdaptationConfig cfg;
  cfg.registers = {100, 11, 12, 13, 14, 15, 16, 17, 18};
  return cfg;
}

std::vector<Selection> selections(const Trace& t) {
  std::vector<Selection> s;
  for (const auto& e : t) s.push_back(e.selection);
  return s;
}

}  // namespace

TEST_SUITE("adaptation-fsm") {

TEST_CASE("config validation") {
  AdaptationConfig cfg = sample_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.registers.pop_back();
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = sample_config();
  cfg.registers[3] = 256;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("idle machine holds R0") {
  const auto cfg = sample_config();
  FsmState st;
  for (int k = 0; k < 50; ++k) {
    const auto r = step(st, cfg, k % 2 == 0, false);
    CHECK(r.selection == 100);
    CHECK(r.state == FsmState{});
    st = r.state;
  }
}

TEST_CASE("start without an edge does nothing") {
  const auto cfg = sample_config();
  const auto r = step(FsmState{}, cfg, false, true);
  CHECK(r.state.phase == Phase::Idle);
  CHECK(r.selection == 100);
}

TEST_CASE("one word") {
  const auto cfg = sample_config();
  const std::vector<WordValue> words{0xA5};
  const auto trace = simulate_transaction(cfg, words, 12);
  const std::vector<Selection> expected{100, 11, 12, 13, 14, 15, 16, 17, 18, 100, 100, 100};
  CHECK(selections(trace) == expected);
  CHECK(trace.size() == 12);
  CHECK(trace[1].start);
}

TEST_CASE("empty stream") {
  const auto trace = simulate_transaction(sample_config(), {}, 20);
  for (const auto& e : trace) CHECK(e.selection == 100);
}

TEST_CASE("back to back words repeat every L + 1 cycles") {
  const auto cfg = sample_config();
  const std::vector<WordValue> words(4, 0x3C);
  const auto s = selections(simulate_transaction(cfg, words, 1 + 4 * 9));
  for (std::size_t c = 1; c + 9 < s.size(); ++c) CHECK(s[c] == s[c + 9]);
  const std::vector<Selection> period(s.begin() + 1, s.begin() + 10);
  const std::vector<Selection> expected{11, 12, 13, 14, 15, 16, 17, 18, 100};
  CHECK(period == expected);
}

TEST_CASE("start mid-word is ignored") {
  const auto cfg = sample_config();
  std::vector<Stimulus> stim;
  for (std::uint64_t c = 0; c < 12; ++c) stim.push_back({c, true, true});
  const auto s = selections(simulate(cfg, stim));
  const std::vector<Selection> expected{11, 12, 13, 14, 15, 16, 17, 18, 100, 11, 12, 13};
  CHECK(s == expected);
}

TEST_CASE("counter stays in range and matches the reference machine") {
  std::mt19937_64 rng(5);
  for (int length : {1, 2, 5, 8, 13}) {
    AdaptationConfig cfg;
    cfg.word_length = length;
    std::uniform_int_distribution<Selection> reg(0, 255);
    for (int k = 0; k <= length; ++k) cfg.registers.push_back(reg(rng));
    oracle::ReferenceFsm ref(length, cfg.registers);
    std::bernoulli_distribution coin(0.6);
    FsmState st;
    for (int k = 0; k < 2000; ++k) {
      const bool edge = coin(rng);
      const bool start = coin(rng);
      const auto r = step(st, cfg, edge, start);
      CHECK(r.state.counter >= 0);
      CHECK(r.state.counter <= length);
      CHECK((r.state.phase == Phase::Idle) == (r.state.counter == 0));
      CHECK(r.selection == cfg.reg(r.state.counter));
      CHECK(r.selection == ref.clock(edge, start));
      st = r.state;
    }
  }
}

TEST_CASE("trace text round trip") {
  const auto cfg = sample_config();
  const std::vector<WordValue> words{1, 2};
  const auto trace = simulate_transaction(cfg, words, 25);
  std::stringstream text;
  write_trace(text, trace);
  std::stringstream with_comments;
  with_comments << "# cycle edge start selection\n\n" << text.str();
  const auto stim = read_stimulus(with_comments);
  CHECK(simulate(cfg, stim) == trace);
  std::istringstream bad("0 2 0\n");
  CHECK_THROWS_AS((void)read_stimulus(bad), Error);
}

TEST_CASE("trace profiles drive the I2C channel") {
  const auto cfg = sample_config();
  const std::vector<WordValue> words{0x12, 0xFE, 0x80};
  const auto trace = simulate_transaction(cfg, words, 40);
  const auto profiles = profiles_from_trace(cfg, trace);
  REQUIRE(profiles.size() == 3);
  i2c::DcpProfile expected;
  expected.settings = {11, 12, 13, 14, 15, 16, 17, 18};
  expected.nominal = 100;
  const auto params = i2c::circuit_preset("isl23415-100k");
  const auto want = i2c::channel_from_profile(expected, params);
  for (const auto& p : profiles) {
    CHECK(p.settings == expected.settings);
    CHECK(p.nominal == expected.nominal);
    const auto got = i2c::channel_from_profile(p, params);
    for (WordValue x = 0; x < 256; ++x)
      for (int i = 0; i < 8; ++i) CHECK(got.p_down(x, i) == want.p_down(x, i));
  }
}

}  // TEST_SUITE
