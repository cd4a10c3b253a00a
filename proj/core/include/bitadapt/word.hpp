#pragma once

#include <cstdint>
#include <vector>

namespace bitadapt {

inline constexpr int kMaxWidth = 16;

using WordValue = std::uint32_t;

/// Number of distinct words of the given width (2^width).
[[nodiscard]] constexpr std::size_t word_count(int width) { return std::size_t{1} << width; }

[[nodiscard]] constexpr WordValue width_mask(int width) {
  return static_cast<WordValue>(word_count(width) - 1);
}

void check_width(int width);

// An L-bit word; bit i contributes 2^i to the unsigned value.
class Word {
 public:
  Word(WordValue bits, int width);

  [[nodiscard]] WordValue value() const noexcept { return bits_; }
  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] bool bit(int i) const noexcept { return ((bits_ >> i) & 1U) != 0; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  WordValue bits_;
  int width_;
};

// Per-bit signed error pattern in {-1, 0, +1}^L. A +1 entry is a 0->1 flip,
// a -1 entry a 1->0 flip. Stored as two disjoint masks.
class ErrorVector {
 public:
  ErrorVector(WordValue pos_mask, WordValue neg_mask, int width);

  static ErrorVector zero(int width) { return ErrorVector(0, 0, width); }

  [[nodiscard]] WordValue pos_mask() const noexcept { return pos_; }
  [[nodiscard]] WordValue neg_mask() const noexcept { return neg_; }
  [[nodiscard]] WordValue support() const noexcept { return pos_ | neg_; }
  [[nodiscard]] int width() const noexcept { return width_; }

  /// Entry at bit i: -1, 0 or +1.
  [[nodiscard]] int at(int i) const noexcept;

  friend bool operator==(const ErrorVector&, const ErrorVector&) = default;

 private:
  WordValue pos_;
  WordValue neg_;
  int width_;
};

/// Sum over i of eps(i) * 2^i. The unsigned distortion is its absolute value.
[[nodiscard]] std::int64_t signed_distortion(const ErrorVector& eps) noexcept;

/// Words x that can produce eps: x_i = 1 where eps(i) = -1, x_i = 0 where eps(i) = +1.
[[nodiscard]] std::vector<Word> compatible_words(const ErrorVector& eps);

/// Calls fn(x) for every compatible word value in increasing order without materializing the set.
template <typename Fn>
void for_each_compatible_word(const ErrorVector& eps, Fn&& fn) {
  const WordValue free_bits = width_mask(eps.width()) & ~eps.support();
  WordValue subset = 0;
  while (true) {
    fn(static_cast<WordValue>(eps.neg_mask() | subset));
    if (subset == free_bits) break;
    subset = (subset - free_bits) & free_bits;
  }
}

}  // namespace bitadapt
