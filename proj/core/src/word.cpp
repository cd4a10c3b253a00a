#include "bitadapt/word.hpp"

#include <bit>
#include <string>

#include "bitadapt/errors.hpp"

namespace bitadapt {

void check_width(int width) {
  require(width >= 1 && width <= kMaxWidth, ErrorKind::InvalidArgument,
          "word width must be in [1, 16], got " + std::to_string(width));
}

Word::Word(WordValue bits, int width) : bits_(bits), width_(width) {
  check_width(width);
  require(bits <= width_mask(width), ErrorKind::InvalidArgument,
          "word value " + std::to_string(bits) + " does not fit in " + std::to_string(width) + " bits");
}

ErrorVector::ErrorVector(WordValue pos_mask, WordValue neg_mask, int width)
    : pos_(pos_mask), neg_(neg_mask), width_(width) {
  check_width(width);
  require((pos_mask & neg_mask) == 0, ErrorKind::InvalidArgument,
          "error vector masks overlap: an entry cannot be both +1 and -1");
  require((support() & ~width_mask(width)) == 0, ErrorKind::InvalidArgument,
          "error vector has entries beyond its width");
}

int ErrorVector::at(int i) const noexcept {
  if ((pos_ >> i) & 1U) return 1;
  if ((neg_ >> i) & 1U) return -1;
  return 0;
}

std::int64_t signed_distortion(const ErrorVector& eps) noexcept {
  return static_cast<std::int64_t>(eps.pos_mask()) - static_cast<std::int64_t>(eps.neg_mask());
}

std::vector<Word> compatible_words(const ErrorVector& eps) {
  std::vector<Word> words;
  words.reserve(std::size_t{1} << (eps.width() - std::popcount(eps.support())));
  for_each_compatible_word(eps, [&](WordValue x) { words.emplace_back(x, eps.width()); });
  return words;
}

}  // namespace bitadapt
