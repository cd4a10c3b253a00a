#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "bitadapt/word.hpp"

namespace bitadapt {

// Bit-level error probabilities that do not depend on the transmitted word.
struct WordIndependentChannel {
  std::vector<double> p_down;  // 1 -> 0 at bit i, given x_i = 1
  std::vector<double> p_up;    // 0 -> 1 at bit i, given x_i = 0
};

// Dense per-word table, row-major: entry [x * width + i].
struct WordDependentChannel {
  std::vector<double> p_down;
  std::vector<double> p_up;
};

using BitProbabilityFn = std::function<double(WordValue x, int bit)>;

// Per-word, per-bit, per-polarity error probabilities. Bit errors are
// conditionally independent across positions given the transmitted word.
class ChannelModel {
 public:
  static ChannelModel independent(std::vector<double> p_down, std::vector<double> p_up);
  static ChannelModel dependent(int width, std::vector<double> p_down, std::vector<double> p_up);
  static ChannelModel dependent(int width, const BitProbabilityFn& p_down, const BitProbabilityFn& p_up);
  static ChannelModel zero(int width);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] bool is_word_independent() const noexcept {
    return std::holds_alternative<WordIndependentChannel>(model_);
  }

  [[nodiscard]] double p_down(WordValue x, int bit) const noexcept;
  [[nodiscard]] double p_up(WordValue x, int bit) const noexcept;

  /// Probability that bit i of word x is received flipped (polarity follows x_i).
  [[nodiscard]] double flip(WordValue x, int bit) const noexcept {
    return ((x >> bit) & 1U) != 0 ? p_down(x, bit) : p_up(x, bit);
  }

  /// Per-word 2L vector (p_down[0..L-1], p_up[0..L-1]).
  [[nodiscard]] std::vector<double> word_vector(WordValue x) const;

  /// Materializes a word-independent channel as a dense table.
  [[nodiscard]] ChannelModel to_dependent() const;

  [[nodiscard]] const WordIndependentChannel* as_independent() const noexcept {
    return std::get_if<WordIndependentChannel>(&model_);
  }
  [[nodiscard]] const WordDependentChannel* as_dependent() const noexcept {
    return std::get_if<WordDependentChannel>(&model_);
  }

 private:
  ChannelModel(int width, std::variant<WordIndependentChannel, WordDependentChannel> model);

  int width_;
  std::variant<WordIndependentChannel, WordDependentChannel> model_;
};

}  // namespace bitadapt
