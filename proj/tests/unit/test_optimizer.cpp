#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "bitadapt/distortion.hpp"
#include "bitadapt/errors.hpp"
#include "bitadapt/optimizer.hpp"
#include "oracles.hpp"

using namespace bitadapt;

namespace {

bool throws_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

bool tail_below(const DistortionDistribution& d, const ConstraintTail& t) {
  for (std::size_t m = 0; m < d.size(); ++m)
    if (d.tail()[m] > t[m] + 1e-12) return false;
  return true;
}

// Best benefit over {0, 1/4}^{2L}, by direct enumeration.
double quarter_cube_optimum(const InputDistribution& input, const ConstraintTail& t) {
  const int width = input.width();
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1U << (2 * width)); ++mask) {
    std::vector<double> down(width);
    std::vector<double> up(width);
    for (int k = 0; k < width; ++k) {
      down[k] = ((mask >> k) & 1U) != 0 ? 0.25 : 0.0;
      up[k] = ((mask >> (width + k)) & 1U) != 0 ? 0.25 : 0.0;
    }
    const double value = 0.0625 * std::popcount(mask);
    if (value > best && tail_below(brute_force_oracle(ChannelModel::independent(down, up), input), t)) best = value;
  }
  return best;
}

}  // namespace

TEST_SUITE("optimizer") {

TEST_CASE("benefit") {
  CHECK(benefit(ProbabilityVector::zeros(8, 7)) == 0.0);
  CHECK(benefit(ProbabilityVector::bit_independent(8, 1, 0.5, 0.5)) == 4.0);
  CHECK(benefit(std::vector<double>{0.25, 0.5}) == 0.3125);
}

TEST_CASE("average benefit") {
  const auto ch = ChannelModel::independent({0.1, 0.2}, {0.3, 0.4});
  CHECK(average_benefit(ch, InputDistribution::uniform(2)) == doctest::Approx(0.3));
}

TEST_CASE("average benefit over words") {
  // x = 0 has B = 1, x = 1 has B = 3 under the functional sum of entries.
  const auto ch = ChannelModel::dependent(1, std::vector<double>{0.5, 1.0}, std::vector<double>{0.5, 1.0});
  BenefitFunctional sum = [](std::span<const double> p) { return 2.0 * (p[0] + p[1]) - 1.0; };
  CHECK(average_benefit(ch, InputDistribution(1, {0.5, 0.5}), sum) == doctest::Approx(2.0));
  CHECK(average_benefit(ch, InputDistribution::point_mass(1, 1), sum) == doctest::Approx(3.0));
  CHECK(average_benefit(ch, InputDistribution::point_mass(1, 0)) == doctest::Approx(0.5));
}

TEST_CASE("constraint tail validation") {
  CHECK(throws_kind(ErrorKind::InvalidArgument, [] { (void)ConstraintTail(1, {0.2, 0.3}); }));
  CHECK(throws_kind(ErrorKind::InvalidArgument, [] { (void)ConstraintTail(1, {1.2, 0.0}); }));
  CHECK(throws_kind(ErrorKind::WidthMismatch, [] { (void)ConstraintTail(2, {0.2, 0.0}); }));
  const auto u = ConstraintTail::unconstrained(3);
  CHECK(u[0] == 1.0);
  CHECK(u[7] == 0.0);
}

TEST_CASE("probability vector validation") {
  CHECK(throws_kind(ErrorKind::InvalidArgument, [] { (void)ProbabilityVector(1, 2, {0.75, 0.0}); }));
  CHECK(throws_kind(ErrorKind::InvalidArgument, [] { (void)ProbabilityVector(1, 2, {0.125, 0.0}); }));
  CHECK(throws_kind(ErrorKind::WidthMismatch, [] { (void)ProbabilityVector(2, 2, {0.25, 0.0}); }));
  const ProbabilityVector p(2, 3, {0.125, 0.25, 0.375, 0.5});
  CHECK(p.p_down()[1] == 0.25);
  CHECK(p.p_up()[0] == 0.375);
  CHECK(p.channel().p_up(0, 1) == 0.5);
}

TEST_CASE("satisfies constraint") {
  const auto input = InputDistribution::uniform(4);
  const auto clean = distortion_pmf_fast(ChannelModel::zero(4), input);
  CHECK(satisfies_constraint(clean, ConstraintTail::zero(4)));
  std::mt19937_64 rng(21);
  for (int k = 0; k < 10; ++k)
    CHECK(satisfies_constraint(distortion_pmf_fast(oracle::random_independent_channel(4, rng), input),
                               ConstraintTail::unconstrained(4)));
  const auto down = distortion_pmf_fast(ChannelModel::independent(std::vector<double>(4, 1.0), std::vector<double>(4, 0.0)), input);
  CHECK_FALSE(satisfies_constraint(down, ConstraintTail::zero(4)));
  CHECK(throws_kind(ErrorKind::WidthMismatch, [&] { (void)satisfies_constraint(down, ConstraintTail::zero(3)); }));
}

TEST_CASE("exhaustive search corner cases") {
  const auto input = InputDistribution::uniform(8);
  const auto none = exhaustive_search_bit_independent(input, ConstraintTail::zero(8));
  CHECK(none.feasible);
  CHECK(none.benefit == 0.0);
  CHECK(none.best == ProbabilityVector::zeros(8, 7));
  const auto all = exhaustive_search_bit_independent(input, ConstraintTail::unconstrained(8));
  CHECK(all.benefit == 4.0);
  CHECK(all.best == ProbabilityVector::bit_independent(8, 7, 0.5, 0.5));
  // Only 0 -> 1 errors can hurt a zero word, so p_down is free.
  const auto zero_word = exhaustive_search_bit_independent(InputDistribution::point_mass(8, 0), ConstraintTail::zero(8));
  CHECK(zero_word.best == ProbabilityVector::bit_independent(8, 7, 0.5, 0.0));
}

TEST_CASE("exhaustive search matches the independent grid") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int width = 3 + static_cast<int>(seed % 3);
    const auto rc = generate_random_constraint(width, seed);
    std::mt19937_64 rng(seed);
    const auto input = seed % 2 == 0 ? InputDistribution::uniform(width) : oracle::random_input(width, rng);
    const int r = 5;
    const auto got = exhaustive_search_bit_independent(input, rc.constraint, {{}, r});
    const auto want = oracle::grid_optimum(input, rc.constraint, r);
    CHECK(got.best.p_down()[0] == want.p_down);
    CHECK(got.best.p_up()[0] == want.p_up);
    CHECK(got.benefit == doctest::Approx(want.benefit));
    CHECK(got.feasible);
    CHECK(tail_below(brute_force_oracle(got.best.channel(), input), rc.constraint));
  }
}

TEST_CASE("uniform input ties resolve to p_down <= p_up") {
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    const auto rc = generate_random_constraint(6, seed);
    const auto r = exhaustive_search_bit_independent(InputDistribution::uniform(6), rc.constraint);
    CHECK(r.best.p_down()[0] <= r.best.p_up()[0]);
  }
}

TEST_CASE("adaptive search corner cases") {
  const auto input = InputDistribution::uniform(4);
  const auto none = adaptive_search_bit_level(input, ConstraintTail::zero(4));
  CHECK(none.benefit == 0.0);
  CHECK(none.best == ProbabilityVector::zeros(4, 7));
  const auto all = adaptive_search_bit_level(input, ConstraintTail::unconstrained(4));
  REQUIRE(all.step_benefits.size() == 6);
  CHECK(all.step_benefits[0] == 8 * 0.0625);
  for (double p : all.best.values()) CHECK(p == 63.0 / 128.0);
}

TEST_CASE("adaptive search step one is the best quarter-cube vertex") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const int width = 3;
    const auto rc = generate_random_constraint(width, seed + 30);
    const auto input = InputDistribution::uniform(width);
    const auto r = adaptive_search_bit_level(input, rc.constraint);
    CHECK(r.step_benefits.front() == doctest::Approx(quarter_cube_optimum(input, rc.constraint)));
  }
}

TEST_CASE("adaptive search is monotone and feasible") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const int width = 4 + static_cast<int>(seed % 3);
    const auto rc = generate_random_constraint(width, seed + 40);
    std::mt19937_64 rng(seed);
    const auto input = seed % 2 == 0 ? InputDistribution::uniform(width) : oracle::random_input(width, rng);
    const auto r = adaptive_search_bit_level(input, rc.constraint);
    CHECK(r.feasible);
    for (std::size_t k = 1; k < r.step_benefits.size(); ++k) CHECK(r.step_benefits[k] >= r.step_benefits[k - 1]);
    CHECK(r.benefit == r.step_benefits.back());
    CHECK(r.best.resolution_log2() == 7);
    CHECK(tail_below(brute_force_oracle(r.best.channel(), input), rc.constraint));
    const auto again = adaptive_search_bit_level(input, rc.constraint);
    CHECK(again.best == r.best);
    CHECK(again.evaluations == r.evaluations);
  }
}

TEST_CASE("custom functional uses the same ordering rules") {
  const int width = 3;
  const auto rc = generate_random_constraint(width, 77);
  const auto input = InputDistribution::uniform(width);
  BenefitFunctional square = [](std::span<const double> p) {
    double s = 0.0;
    for (double v : p) s += v * v;
    return s;
  };
  const auto plain = adaptive_search_bit_level(input, rc.constraint);
  AdaptiveOptions opts;
  opts.functional = square;
  const auto custom = adaptive_search_bit_level(input, rc.constraint, opts);
  CHECK(custom.best == plain.best);
  const auto ex_plain = exhaustive_search_bit_independent(input, rc.constraint);
  ExhaustiveOptions eopts;
  eopts.functional = square;
  CHECK(exhaustive_search_bit_independent(input, rc.constraint, eopts).best == ex_plain.best);
}

TEST_CASE("symmetric neighbourhood keeps the guarantees") {
  const int width = 3;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto rc = generate_random_constraint(width, seed + 60);
    const auto input = InputDistribution::uniform(width);
    AdaptiveOptions opts;
    opts.symmetric_neighborhood = true;
    const auto r = adaptive_search_bit_level(input, rc.constraint, opts);
    for (std::size_t k = 1; k < r.step_benefits.size(); ++k) CHECK(r.step_benefits[k] >= r.step_benefits[k - 1]);
    CHECK(tail_below(brute_force_oracle(r.best.channel(), input), rc.constraint));
  }
}

TEST_CASE("bit-level grid dominates the bit-independent grid") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int width = 2 + static_cast<int>(seed % 3);
    const auto rc = generate_random_constraint(width, seed + 80);
    std::mt19937_64 rng(seed);
    const auto input = seed % 2 == 0 ? InputDistribution::uniform(width) : oracle::random_input(width, rng);
    const double independent = exhaustive_search_bit_independent(input, rc.constraint, {{}, 2}).benefit;
    CHECK(oracle::bit_level_optimum(input, rc.constraint, 2) >= independent);
  }
}

TEST_CASE("random constraint construction") {
  const auto zero = constraint_from_probabilities(std::vector<double>(5, 0.0));
  for (double v : zero.values()) CHECK(v == 0.0);
  const auto one = constraint_from_probabilities(std::vector<double>{0.3});
  CHECK(one[0] == doctest::Approx(0.3));
  CHECK(one[1] == 0.0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto rc = generate_random_constraint(8, seed);
    REQUIRE(rc.p_rand.size() == 8);
    for (double p : rc.p_rand) CHECK((p >= 0.0 && p <= 0.5));
    const auto direct = distortion_pmf_fast(ChannelModel::independent(std::vector<double>(8, 0.0), rc.p_rand),
                                            InputDistribution::point_mass(8, 0));
    for (std::size_t m = 0; m < 256; ++m) CHECK(std::abs(direct.tail()[m] - rc.constraint[m]) <= 1e-12);
  }
  const auto a = generate_random_constraint(8, 123);
  const auto b = generate_random_constraint(8, 123);
  CHECK(a.p_rand == b.p_rand);
}

TEST_CASE("oracle tail") {
  const auto none = oracle_tail(std::vector<double>(4, 0.0), InputDistribution::uniform(4));
  for (double v : none.tail()) CHECK(v == 0.0);
  const auto one = oracle_tail(std::vector<double>{0.4}, InputDistribution::uniform(1));
  CHECK(one.tail()[0] == doctest::Approx(0.4));
  CHECK(one.tail()[1] == 0.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rc = generate_random_constraint(8, seed);
    CHECK(tail_below(oracle_tail(rc.p_rand, InputDistribution::uniform(8)), rc.constraint));
  }
}

}  // TEST_SUITE
