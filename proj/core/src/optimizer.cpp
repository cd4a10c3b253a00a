#include "bitadapt/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "bitadapt/distortion.hpp"
#include "bitadapt/errors.hpp"

namespace bitadapt {

namespace {

constexpr double kMaxProbability = 0.5;

double evaluate_benefit(const BenefitFunctional& functional, std::span<const double> p) {
  return functional ? functional(p) : benefit(p);
}

void check_resolution(int resolution_log2) {
  require(resolution_log2 >= 1 && resolution_log2 <= 30, ErrorKind::InvalidArgument,
          "resolution exponent must be in [1, 30]");
}

// Candidate pool for one search stage. Evaluated in order of decreasing benefit,
// ties broken by the lexicographically smallest vector; the first feasible
// candidate in that order is the stage optimum regardless of how many are scanned.
class CandidatePool {
 public:
  explicit CandidatePool(int width) : dim_(2 * static_cast<std::size_t>(width)) {}

  void add(std::span<const double> values) { flat_.insert(flat_.end(), values.begin(), values.end()); }

  [[nodiscard]] std::size_t size() const noexcept { return flat_.size() / dim_; }
  [[nodiscard]] std::span<const double> at(std::size_t k) const { return std::span(flat_).subspan(k * dim_, dim_); }

  std::vector<std::size_t> ranked(const BenefitFunctional& functional) const {
    std::vector<double> score(size());
    for (std::size_t k = 0; k < size(); ++k) score[k] = evaluate_benefit(functional, at(k));
    std::vector<std::size_t> order(size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (score[a] != score[b]) return score[a] > score[b];
      const auto va = at(a);
      const auto vb = at(b);
      return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
    });
    // Clamping can produce duplicates; identical vectors are adjacent after the sort.
    order.erase(std::unique(order.begin(), order.end(),
                            [&](std::size_t a, std::size_t b) { return std::ranges::equal(at(a), at(b)); }),
                order.end());
    return order;
  }

 private:
  std::size_t dim_;
  std::vector<double> flat_;
};

// Candidates of the form (choice_0, ..., choice_{d-1}) with each coordinate
// drawn from its own option list. Under the squared-norm functional the benefit
// is separable, so candidates can be produced lazily in ranked order by a
// best-first walk: each child moves one coordinate to its next smaller option,
// and only coordinates at or after the parent's last move may change, giving
// every combination a unique parent. Children have strictly smaller benefit,
// so popping (benefit desc, vector lex asc) from the heap is a global order.
class SeparableCandidateStream {
 public:
  explicit SeparableCandidateStream(std::vector<std::vector<double>> options) : options_(std::move(options)) {
    require(options_.size() <= kMaxDims, ErrorKind::InvalidArgument, "too many search coordinates");
    for (auto& o : options_) {
      std::sort(o.begin(), o.end(), std::greater<>());
      o.erase(std::unique(o.begin(), o.end()), o.end());
    }
    Node root{};
    root.total = total(root.ranks);
    push(root);
  }

  std::optional<std::vector<double>> next() {
    if (heap_.empty()) return std::nullopt;
    std::pop_heap(heap_.begin(), heap_.end(), Order{});
    const Node node = heap_.back();
    heap_.pop_back();
    for (std::size_t k = node.last; k < options_.size(); ++k) {
      if (node.ranks[k] + 1u >= options_[k].size()) continue;
      Node child = node;
      child.last = static_cast<std::uint8_t>(k);
      ++child.ranks[k];
      child.total = total(child.ranks);
      push(child);
    }
    return values(node.ranks);
  }

 private:
  static constexpr std::size_t kMaxDims = 2 * kMaxWidth;
  using Ranks = std::array<std::uint8_t, kMaxDims>;

  struct Node {
    Ranks ranks{};
    double total = 0.0;
    std::uint8_t last = 0;
  };

  // Max-heap "less than": a ranks after b. Options are sorted descending, so a
  // lexicographically smaller value vector has lexicographically larger ranks.
  struct Order {
    bool operator()(const Node& a, const Node& b) const {
      if (a.total != b.total) return a.total < b.total;
      return a.ranks < b.ranks;
    }
  };

  double total(const Ranks& ranks) const {
    double t = 0.0;
    for (std::size_t k = 0; k < options_.size(); ++k) {
      const double v = options_[k][ranks[k]];
      t += v * v;
    }
    return t;
  }

  std::vector<double> values(const Ranks& ranks) const {
    std::vector<double> v(options_.size());
    for (std::size_t k = 0; k < options_.size(); ++k) v[k] = options_[k][ranks[k]];
    return v;
  }

  void push(const Node& node) {
    heap_.push_back(node);
    std::push_heap(heap_.begin(), heap_.end(), Order{});
  }

  std::vector<std::vector<double>> options_;
  std::vector<Node> heap_;
};

// Feasibility test for word-independent candidates. Uniform input makes every
// bit an independent fair coin, so the signed distortion is a convolution of
// three-point laws {-2^i: p_down/2, 0, +2^i: p_up/2}; other inputs use the bit sweep.
class FeasibilityEvaluator {
 public:
  FeasibilityEvaluator(const InputDistribution& input, const ConstraintTail& constraint)
      : input_(input),
        constraint_(constraint),
        width_(input.width()),
        offset_(word_count(width_) - 1),
        uniform_(input.is_uniform()),
        law_(2 * offset_ + 1),
        scratch_(law_.size()),
        pmf_(word_count(width_)),
        channel_{std::vector<double>(width_), std::vector<double>(width_)} {}

  /// Computes the induced PMF for `v` and tests it against the constraint.
  bool feasible(std::span<const double> v) {
    std::copy_n(v.begin(), width_, channel_.p_down.begin());
    std::copy_n(v.begin() + width_, width_, channel_.p_up.begin());
    if (uniform_) {
      if (!uniform_pmf()) return false;
    } else {
      const auto dist = distortion_pmf_bit_sweep(channel_, input_);
      std::copy(dist.pmf().begin(), dist.pmf().end(), pmf_.begin());
    }
    // Suffix sums in the same order as tail_from_pmf, failing fast from the top.
    const auto bound = constraint_.values();
    double tail = 0.0;
    for (std::size_t m = pmf_.size() - 1; m-- > 0;) {
      tail += pmf_[m + 1];
      if (tail > bound[m] + kConstraintSlack) return false;
    }
    return true;
  }

  [[nodiscard]] DistortionDistribution distribution() const { return {width_, pmf_}; }

 private:
  // Signed law built from the most significant bit down. After bits L-1..k the
  // partial sum H is a multiple of 2^k and the low bits move it by less than
  // 2^k, so Pr(|H| >= J 2^k) bounds the tail at (J-1) 2^k from below. Returns
  // false as soon as such a bound breaks the constraint.
  bool uniform_pmf() {
    const auto bound = constraint_.values();
    std::fill(law_.begin(), law_.end(), 0.0);
    law_[offset_] = 1.0;
    std::size_t reach = 0;  // support is [offset - reach, offset + reach] in units of 2^k
    for (int k = width_; k-- > 0;) {
      const double down = 0.5 * channel_.p_down[k];
      const double up = 0.5 * channel_.p_up[k];
      const double stay = 1.0 - down - up;
      const std::size_t next = 2 * reach + 1;
      scratch_[offset_] = stay * law_[offset_];
      for (std::size_t j = 1; j <= next; ++j) {
        double pos = 0.0;
        double neg = 0.0;
        if (j % 2 == 0) {
          pos = stay * law_[offset_ + j / 2];
          neg = stay * law_[offset_ - j / 2];
        } else {
          const std::size_t a = (j - 1) / 2;
          const std::size_t b = (j + 1) / 2;
          pos = up * law_[offset_ + a] + (b <= reach ? down * law_[offset_ + b] : 0.0);
          neg = down * law_[offset_ - a] + (b <= reach ? up * law_[offset_ - b] : 0.0);
        }
        scratch_[offset_ + j] = pos;
        scratch_[offset_ - j] = neg;
      }
      law_.swap(scratch_);
      reach = next;
      if (k == 0) break;
      double lower = 0.0;
      for (std::size_t j = reach; j >= 1; --j) {
        lower += law_[offset_ + j] + law_[offset_ - j];
        if (lower > bound[(j - 1) << k] + kConstraintSlack + kPruneMargin) return false;
      }
    }
    pmf_[0] = law_[offset_];
    for (std::size_t m = 1; m <= offset_; ++m) pmf_[m] = law_[offset_ + m] + law_[offset_ - m];
    return true;
  }

  static constexpr double kPruneMargin = 1e-15;

  const InputDistribution& input_;
  const ConstraintTail& constraint_;
  int width_;
  std::size_t offset_;
  bool uniform_;
  std::vector<double> law_;
  std::vector<double> scratch_;
  std::vector<double> pmf_;
  WordIndependentChannel channel_;
};

struct StageOutcome {
  std::vector<double> best;
  std::optional<DistortionDistribution> induced;
  std::uint64_t evaluations = 0;
};

StageOutcome run_stage(const CandidatePool& pool, FeasibilityEvaluator& evaluator, const BenefitFunctional& functional) {
  StageOutcome out;
  for (std::size_t k : pool.ranked(functional)) {
    const auto v = pool.at(k);
    ++out.evaluations;
    if (evaluator.feasible(v)) {
      out.best.assign(v.begin(), v.end());
      out.induced.emplace(evaluator.distribution());
      return out;
    }
  }
  return out;
}

StageOutcome run_stage(SeparableCandidateStream& stream, FeasibilityEvaluator& evaluator) {
  StageOutcome out;
  while (auto v = stream.next()) {
    ++out.evaluations;
    if (evaluator.feasible(*v)) {
      out.best = std::move(*v);
      out.induced.emplace(evaluator.distribution());
      return out;
    }
  }
  return out;
}

}  // namespace

ConstraintTail::ConstraintTail(int width, std::vector<double> values) : width_(width), values_(std::move(values)) {
  check_width(width);
  require(values_.size() == word_count(width), ErrorKind::WidthMismatch, "constraint tail must have 2^L entries");
  for (std::size_t m = 0; m < values_.size(); ++m) {
    require(std::isfinite(values_[m]) && values_[m] >= 0.0 && values_[m] <= 1.0, ErrorKind::InvalidArgument,
            "constraint tail values must lie in [0, 1]");
    require(m == 0 || values_[m] <= values_[m - 1] + kConstraintSlack, ErrorKind::InvalidArgument,
            "constraint tail must be non-increasing (violated at m = " + std::to_string(m) + ")");
  }
}

ConstraintTail ConstraintTail::unconstrained(int width) {
  check_width(width);
  std::vector<double> v(word_count(width), 1.0);
  v.back() = 0.0;
  return {width, std::move(v)};
}

ConstraintTail ConstraintTail::zero(int width) {
  check_width(width);
  return {width, std::vector<double>(word_count(width), 0.0)};
}

ProbabilityVector::ProbabilityVector(int width, int resolution_log2, std::vector<double> values)
    : width_(width), resolution_log2_(resolution_log2), values_(std::move(values)) {
  check_width(width);
  check_resolution(resolution_log2);
  require(values_.size() == 2 * static_cast<std::size_t>(width), ErrorKind::WidthMismatch,
          "probability vector must have 2L entries");
  const double scale = std::ldexp(1.0, resolution_log2);
  for (double p : values_) {
    require(p >= 0.0 && p <= kMaxProbability, ErrorKind::InvalidArgument, "probabilities must lie in [0, 1/2]");
    require(std::floor(p * scale) == p * scale, ErrorKind::InvalidArgument,
            "probability is not a multiple of the declared resolution");
  }
}

ProbabilityVector ProbabilityVector::zeros(int width, int resolution_log2) {
  return {width, resolution_log2, std::vector<double>(2 * static_cast<std::size_t>(width), 0.0)};
}

ProbabilityVector ProbabilityVector::bit_independent(int width, int resolution_log2, double p_down, double p_up) {
  std::vector<double> v(2 * static_cast<std::size_t>(width), p_down);
  std::fill(v.begin() + width, v.end(), p_up);
  return {width, resolution_log2, std::move(v)};
}

ChannelModel ProbabilityVector::channel() const {
  return ChannelModel::independent({p_down().begin(), p_down().end()}, {p_up().begin(), p_up().end()});
}

double benefit(std::span<const double> p) noexcept {
  double total = 0.0;
  for (double v : p) total += v * v;
  return total;
}

double average_benefit(const ChannelModel& channel, const InputDistribution& input, const BenefitFunctional& functional) {
  require(channel.width() == input.width(), ErrorKind::WidthMismatch, "channel and input widths differ");
  if (channel.is_word_independent()) return evaluate_benefit(functional, channel.word_vector(0));
  double total = 0.0;
  for (WordValue x = 0; x < word_count(input.width()); ++x) {
    if (input[x] == 0.0) continue;
    total += input[x] * evaluate_benefit(functional, channel.word_vector(x));
  }
  return total;
}

bool satisfies_constraint(const DistortionDistribution& dist, const ConstraintTail& constraint) {
  require(dist.width() == constraint.width(), ErrorKind::WidthMismatch, "distribution and constraint widths differ");
  const auto tail = dist.tail();
  const auto bound = constraint.values();
  for (std::size_t m = 0; m < tail.size(); ++m)
    if (tail[m] > bound[m] + kConstraintSlack) return false;
  return true;
}

SearchResult exhaustive_search_bit_independent(const InputDistribution& input, const ConstraintTail& constraint,
                                               const ExhaustiveOptions& options) {
  require(input.width() == constraint.width(), ErrorKind::WidthMismatch, "input and constraint widths differ");
  check_resolution(options.resolution_log2);
  const int width = input.width();
  const int steps = 1 << (options.resolution_log2 - 1);  // 1/2 in grid units
  const double res = std::ldexp(1.0, -options.resolution_log2);

  CandidatePool pool(width);
  std::vector<double> v(2 * static_cast<std::size_t>(width));
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; b <= steps; ++b) {
      std::fill(v.begin(), v.begin() + width, a * res);
      std::fill(v.begin() + width, v.end(), b * res);
      pool.add(v);
    }
  }

  FeasibilityEvaluator evaluator(input, constraint);
  auto stage = run_stage(pool, evaluator, options.functional);
  if (!stage.induced) {
    auto zero = ProbabilityVector::zeros(width, options.resolution_log2);
    return {zero, 0.0, distortion_pmf_fast(zero.channel(), input), stage.evaluations, false, {}};
  }
  ProbabilityVector best(width, options.resolution_log2, std::move(stage.best));
  const double value = evaluate_benefit(options.functional, best.values());
  return {std::move(best), value, std::move(*stage.induced), stage.evaluations, true, {}};
}

SearchResult adaptive_search_bit_level(const InputDistribution& input, const ConstraintTail& constraint,
                                       const AdaptiveOptions& options) {
  require(input.width() == constraint.width(), ErrorKind::WidthMismatch, "input and constraint widths differ");
  check_resolution(options.initial_resolution_log2);
  check_resolution(options.final_resolution_log2);
  require(options.initial_resolution_log2 <= options.final_resolution_log2, ErrorKind::InvalidArgument,
          "initial resolution must not be finer than the final resolution");
  const int width = input.width();
  const std::size_t dim = 2 * static_cast<std::size_t>(width);

  std::vector<double> incumbent(dim, 0.0);
  std::optional<DistortionDistribution> induced;
  std::uint64_t evaluations = 0;
  std::vector<double> step_benefits;
  FeasibilityEvaluator evaluator(input, constraint);

  for (int r = options.initial_resolution_log2; r <= options.final_resolution_log2; ++r) {
    const bool lagged = options.increment_by_previous_resolution && r > options.initial_resolution_log2;
    const double increment = std::ldexp(1.0, lagged ? -(r - 1) : -r);
    // Per-coordinate options: incumbent + delta * increment, clamped.
    std::vector<std::vector<double>> choices(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      for (int delta = options.symmetric_neighborhood ? -1 : 0; delta <= 1; ++delta)
        choices[k].push_back(std::clamp(incumbent[k] + delta * increment, 0.0, kMaxProbability));
    }

    StageOutcome stage;
    if (!options.functional) {
      SeparableCandidateStream stream(std::move(choices));
      stage = run_stage(stream, evaluator);
    } else {
      require(options.symmetric_neighborhood ? dim <= 12 : dim <= 24, ErrorKind::Capacity,
              "custom benefit functionals enumerate every candidate; the neighborhood is too large");
      CandidatePool pool(width);
      std::vector<double> v(dim);
      std::vector<std::size_t> digits(dim, 0);
      // Odometer over the cartesian product of the per-coordinate options.
      while (true) {
        for (std::size_t k = 0; k < dim; ++k) v[k] = choices[k][digits[k]];
        pool.add(v);
        std::size_t k = 0;
        while (k < dim && ++digits[k] == choices[k].size()) digits[k++] = 0;
        if (k == dim) break;
      }
      stage = run_stage(pool, evaluator, options.functional);
    }
    evaluations += stage.evaluations;
    if (stage.induced) {
      incumbent = std::move(stage.best);
      induced.emplace(std::move(*stage.induced));
    }
    step_benefits.push_back(evaluate_benefit(options.functional, incumbent));
  }

  ProbabilityVector best(width, options.final_resolution_log2, incumbent);
  const bool feasible = induced.has_value();
  if (!induced) induced.emplace(distortion_pmf_fast(best.channel(), input));
  const double value = evaluate_benefit(options.functional, best.values());
  return {std::move(best), value, std::move(*induced), evaluations, feasible, std::move(step_benefits)};
}

ConstraintTail constraint_from_probabilities(std::span<const double> p_rand) {
  const int width = static_cast<int>(p_rand.size());
  check_width(width);
  for (double p : p_rand)
    require(p >= 0.0 && p <= 1.0, ErrorKind::InvalidArgument, "p_rand entries must lie in [0, 1]");
  // Only the zero word is sent and only 0 -> 1 flips occur, so the distortion is
  // the received word itself: f_M(m) = prod_i p_i^{m_i} (1 - p_i)^{1 - m_i}.
  std::vector<double> pmf(word_count(width));
  for (WordValue m = 0; m < pmf.size(); ++m) {
    double prob = 1.0;
    for (int i = 0; i < width; ++i) prob *= ((m >> i) & 1U) ? p_rand[i] : 1.0 - p_rand[i];
    pmf[m] = prob;
  }
  return {width, tail_from_pmf(pmf)};
}

RandomConstraint generate_random_constraint(int width, std::uint64_t seed) {
  check_width(width);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(0.0, kMaxProbability);
  std::vector<double> p_rand(width);
  for (auto& p : p_rand) p = draw(rng);
  auto constraint = constraint_from_probabilities(p_rand);
  return {std::move(constraint), std::move(p_rand)};
}

DistortionDistribution oracle_tail(std::span<const double> p_rand, const InputDistribution& input) {
  std::vector<double> p(p_rand.begin(), p_rand.end());
  return distortion_pmf_fast(ChannelModel::independent(p, p), input);
}

}  // namespace bitadapt
