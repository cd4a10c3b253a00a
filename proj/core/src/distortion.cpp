#include "bitadapt/distortion.hpp"

#include <cstdlib>
#include <random>
#include <string>

#include "bitadapt/errors.hpp"

namespace bitadapt {

namespace {

void check_compatible(const ChannelModel& channel, const InputDistribution& input) {
  require(channel.width() == input.width(), ErrorKind::WidthMismatch,
          "channel width " + std::to_string(channel.width()) + " differs from input width " +
              std::to_string(input.width()));
}

// Folds a signed PMF indexed by s + (2^L - 1) onto |s|.
std::vector<double> fold_signed(std::span<const double> signed_pmf, int width) {
  const std::size_t offset = word_count(width) - 1;
  std::vector<double> pmf(word_count(width), 0.0);
  pmf[0] = signed_pmf[offset];
  for (std::size_t m = 1; m <= offset; ++m) pmf[m] = signed_pmf[offset + m] + signed_pmf[offset - m];
  return pmf;
}

}  // namespace

double conditional_error_probability(const ErrorVector& eps, const ChannelModel& channel, WordValue x) noexcept {
  double prob = 1.0;
  for (int i = 0; i < channel.width(); ++i) {
    switch (eps.at(i)) {
      case -1: prob *= channel.p_down(x, i); break;
      case 1: prob *= channel.p_up(x, i); break;
      default: prob *= 1.0 - channel.flip(x, i); break;
    }
  }
  return prob;
}

double error_vector_probability(const ErrorVector& eps, const ChannelModel& channel, const InputDistribution& input) {
  check_compatible(channel, input);
  require(eps.width() == channel.width(), ErrorKind::WidthMismatch, "error vector width mismatch");
  double total = 0.0;
  for_each_compatible_word(eps, [&](WordValue x) {
    const double fx = input[x];
    if (fx != 0.0) total += conditional_error_probability(eps, channel, x) * fx;
  });
  return total;
}

DistortionDistribution distortion_pmf_enumerative(const ChannelModel& channel, const InputDistribution& input) {
  check_compatible(channel, input);
  return distortion_pmf_enumerative(build_error_sets(channel.width()), channel, input);
}

DistortionDistribution distortion_pmf_enumerative(const SignedDistortionMultiset& sets, const ChannelModel& channel,
                                                  const InputDistribution& input) {
  check_compatible(channel, input);
  require(sets.width() == channel.width(), ErrorKind::WidthMismatch, "error sets built for a different width");
  const int width = channel.width();
  std::vector<double> pmf(word_count(width), 0.0);
  for (std::size_t m = 0; m < pmf.size(); ++m) {
    const auto n = static_cast<std::int64_t>(m);
    double fm = 0.0;
    for (const auto& eps : sets.at(n)) fm += error_vector_probability(eps, channel, input);
    if (m != 0)
      for (const auto& eps : sets.at(-n)) fm += error_vector_probability(eps, channel, input);
    pmf[m] = fm;
  }
  return {width, std::move(pmf)};
}

DistortionDistribution distortion_pmf_per_word(const ChannelModel& channel, const InputDistribution& input) {
  check_compatible(channel, input);
  const int width = channel.width();
  const auto offset = static_cast<std::int64_t>(word_count(width)) - 1;
  std::vector<double> law(static_cast<std::size_t>(2 * offset + 1));
  std::vector<double> mixed(law.size(), 0.0);

  for (WordValue x = 0; x < word_count(width); ++x) {
    const double fx = input[x];
    if (fx == 0.0) continue;
    std::fill(law.begin(), law.end(), 0.0);
    law[static_cast<std::size_t>(offset)] = 1.0;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    for (int i = 0; i < width; ++i) {
      const std::int64_t step = std::int64_t{1} << i;
      const bool one = ((x >> i) & 1U) != 0;
      const double q = one ? channel.p_down(x, i) : channel.p_up(x, i);
      if (one) {
        // a 1 -> 0 flip shifts the signed distortion by -2^i
        for (std::int64_t s = lo - step; s <= hi; ++s) {
          const double keep = (s >= lo) ? law[static_cast<std::size_t>(s + offset)] : 0.0;
          const double moved = (s + step <= hi) ? law[static_cast<std::size_t>(s + step + offset)] : 0.0;
          law[static_cast<std::size_t>(s + offset)] = (1.0 - q) * keep + q * moved;
        }
        lo -= step;
      } else {
        for (std::int64_t s = hi + step; s >= lo; --s) {
          const double keep = (s <= hi) ? law[static_cast<std::size_t>(s + offset)] : 0.0;
          const double moved = (s - step >= lo) ? law[static_cast<std::size_t>(s - step + offset)] : 0.0;
          law[static_cast<std::size_t>(s + offset)] = (1.0 - q) * keep + q * moved;
        }
        hi += step;
      }
    }
    for (std::int64_t s = lo; s <= hi; ++s)
      mixed[static_cast<std::size_t>(s + offset)] += fx * law[static_cast<std::size_t>(s + offset)];
  }
  return {width, fold_signed(mixed, width)};
}

DistortionDistribution distortion_pmf_bit_sweep(const WordIndependentChannel& channel, const InputDistribution& input) {
  const int width = input.width();
  require(static_cast<int>(channel.p_down.size()) == width && static_cast<int>(channel.p_up.size()) == width,
          ErrorKind::WidthMismatch, "channel width differs from input width");

  // state[h * span + (s + (2^k - 1))]: mass of words whose bits >= k equal h and
  // whose errors in bits < k sum to s.
  std::size_t highs = word_count(width);
  std::size_t span = 1;
  std::vector<double> state(input.pmf().begin(), input.pmf().end());
  std::vector<double> next;

  for (int k = 0; k < width; ++k) {
    const std::size_t step = std::size_t{1} << k;
    const std::size_t next_highs = highs / 2;
    const std::size_t next_span = span + 2 * step;
    next.assign(next_highs * next_span, 0.0);
    const double pd = channel.p_down[k];
    const double pu = channel.p_up[k];
    for (std::size_t h = 0; h < highs; ++h) {
      const double* src = state.data() + h * span;
      // Old index j (s = j - (2^k - 1)) maps to j + step in the wider row.
      double* dst = next.data() + (h >> 1) * next_span + step;
      if (h & 1U) {
        for (std::size_t j = 0; j < span; ++j) {
          const double v = src[j];
          if (v == 0.0) continue;
          dst[j] += (1.0 - pd) * v;
          dst[j - step] += pd * v;
        }
      } else {
        for (std::size_t j = 0; j < span; ++j) {
          const double v = src[j];
          if (v == 0.0) continue;
          dst[j] += (1.0 - pu) * v;
          dst[j + step] += pu * v;
        }
      }
    }
    state.swap(next);
    highs = next_highs;
    span = next_span;
  }
  return {width, fold_signed(state, width)};
}

DistortionDistribution distortion_pmf_fast(const ChannelModel& channel, const InputDistribution& input) {
  check_compatible(channel, input);
  if (const auto* ind = channel.as_independent()) return distortion_pmf_bit_sweep(*ind, input);
  return distortion_pmf_per_word(channel, input);
}

DistortionDistribution brute_force_oracle(const ChannelModel& channel, const InputDistribution& input, int max_width) {
  check_compatible(channel, input);
  const int width = channel.width();
  require(width <= max_width, ErrorKind::Capacity,
          "brute-force oracle limited to L <= " + std::to_string(max_width));
  const std::size_t words = word_count(width);
  std::vector<double> pmf(words, 0.0);
  for (WordValue x = 0; x < words; ++x) {
    const double fx = input[x];
    if (fx == 0.0) continue;
    for (WordValue received = 0; received < words; ++received) {
      double prob = fx;
      for (int i = 0; i < width; ++i) {
        const double q = channel.flip(x, i);
        prob *= (((x ^ received) >> i) & 1U) ? q : 1.0 - q;
      }
      const auto diff = static_cast<std::int64_t>(x) - static_cast<std::int64_t>(received);
      pmf[static_cast<std::size_t>(std::llabs(diff))] += prob;
    }
  }
  return {width, std::move(pmf)};
}

DistortionDistribution monte_carlo_distortion(const ChannelModel& channel, const InputDistribution& input,
                                              std::uint64_t samples, std::uint64_t seed) {
  check_compatible(channel, input);
  require(samples >= 1, ErrorKind::InvalidArgument, "Monte Carlo needs at least one sample");
  const int width = channel.width();
  std::mt19937_64 rng(seed);
  std::discrete_distribution<WordValue> pick(input.pmf().begin(), input.pmf().end());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::uint64_t> counts(word_count(width), 0);
  for (std::uint64_t n = 0; n < samples; ++n) {
    const WordValue x = pick(rng);
    WordValue received = x;
    for (int i = 0; i < width; ++i)
      if (unit(rng) < channel.flip(x, i)) received ^= WordValue{1} << i;
    const auto diff = static_cast<std::int64_t>(x) - static_cast<std::int64_t>(received);
    ++counts[static_cast<std::size_t>(std::llabs(diff))];
  }
  std::vector<double> pmf(counts.size());
  for (std::size_t m = 0; m < counts.size(); ++m)
    pmf[m] = static_cast<double>(counts[m]) / static_cast<double>(samples);
  return {width, std::move(pmf)};
}

}  // namespace bitadapt
