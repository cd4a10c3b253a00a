#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bitadapt/channel.hpp"
#include "bitadapt/distribution.hpp"

namespace bitadapt {

inline constexpr double kConstraintSlack = 1e-12;

// Upper bound on the tolerable tail, non-increasing in m with range [0, 1].
class ConstraintTail {
 public:
  ConstraintTail(int width, std::vector<double> values);

  /// Tail that every channel satisfies: 1 everywhere except 0 at m = 2^L - 1.
  static ConstraintTail unconstrained(int width);
  static ConstraintTail zero(int width);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] double operator[](std::size_t m) const { return values_[m]; }

 private:
  int width_;
  std::vector<double> values_;
};

// 2L probabilities (p_down[0..L-1] then p_up[0..L-1]) on the dyadic grid
// of step 2^-resolution_log2, each in [0, 1/2].
class ProbabilityVector {
 public:
  ProbabilityVector(int width, int resolution_log2, std::vector<double> values);

  static ProbabilityVector zeros(int width, int resolution_log2);
  /// Same (p_down, p_up) at every bit position.
  static ProbabilityVector bit_independent(int width, int resolution_log2, double p_down, double p_up);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int resolution_log2() const noexcept { return resolution_log2_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::span<const double> p_down() const noexcept { return std::span(values_).first(width_); }
  [[nodiscard]] std::span<const double> p_up() const noexcept { return std::span(values_).last(width_); }

  [[nodiscard]] ChannelModel channel() const;

  friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

 private:
  int width_;
  int resolution_log2_;
  std::vector<double> values_;
};

struct SearchResult {
  ProbabilityVector best;
  double benefit;
  DistortionDistribution induced;
  std::uint64_t evaluations;
  bool feasible;
  std::vector<double> step_benefits;  // adaptive search only: incumbent benefit after each step
};

/// Pluggable benefit functional over a 2L probability vector. Must be monotone
/// for the search to be meaningful; the default is the squared norm.
using BenefitFunctional = std::function<double(std::span<const double>)>;

/// B(p) = sum_i p_down,i^2 + p_up,i^2.
[[nodiscard]] double benefit(std::span<const double> p) noexcept;
[[nodiscard]] inline double benefit(const ProbabilityVector& p) noexcept { return benefit(p.values()); }

/// sum_x f_X(x) B(p^x); equals B(p) for word-independent channels.
[[nodiscard]] double average_benefit(const ChannelModel& channel, const InputDistribution& input,
                                     const BenefitFunctional& functional = {});

/// T_M(m) <= constraint(m) + 1e-12 for every m.
[[nodiscard]] bool satisfies_constraint(const DistortionDistribution& dist, const ConstraintTail& constraint);

struct SearchOptions {
  BenefitFunctional functional;  // empty: squared norm
};

struct ExhaustiveOptions : SearchOptions {
  int resolution_log2 = 7;
};

struct AdaptiveOptions : SearchOptions {
  int initial_resolution_log2 = 2;
  int final_resolution_log2 = 7;
  /// Offsets in {-1, 0, +1} per entry instead of {0, +1}. 3^(2L) candidates per step.
  bool symmetric_neighborhood = false;
  /// Step n adds multiples of the previous step's resolution 2^-n instead of
  /// 2^-(n+1): reaches 1/2 at step 2 but ends on a 2^-(final-1) grid.
  bool increment_by_previous_resolution = false;
};

/// Grid search over (p_down, p_up) in {0, res, ..., 1/2}^2 shared by all bits.
/// Among feasible points, maximal benefit wins; ties go to the lexicographically
/// smallest (p_down, p_up).
[[nodiscard]] SearchResult exhaustive_search_bit_independent(const InputDistribution& input,
                                                             const ConstraintTail& constraint,
                                                             const ExhaustiveOptions& options = {});

/// Coarse-to-fine bit-level search: step 1 tries every 0 + delta * 2^-2 with
/// delta in {0,1}^{2L}; step n tries incumbent + delta * 2^-(n+1), clamped to
/// [0, 1/2]. The incumbent is always a candidate, so benefit never decreases.
[[nodiscard]] SearchResult adaptive_search_bit_level(const InputDistribution& input, const ConstraintTail& constraint,
                                                     const AdaptiveOptions& options = {});

struct RandomConstraint {
  ConstraintTail constraint;
  std::vector<double> p_rand;
};

/// Draws p_rand uniformly from [0, 1/2]^L (std::mt19937_64) and returns the tail
/// of the distortion seen when only the zero word is sent with p_up = p_rand.
[[nodiscard]] RandomConstraint generate_random_constraint(int width, std::uint64_t seed);

/// Same construction from a given p_rand, via the explicit product PMF.
[[nodiscard]] ConstraintTail constraint_from_probabilities(std::span<const double> p_rand);

/// Tail induced by p_down = p_up = p_rand under the given input.
[[nodiscard]] DistortionDistribution oracle_tail(std::span<const double> p_rand, const InputDistribution& input);

}  // namespace bitadapt
