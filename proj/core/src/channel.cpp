#include "bitadapt/channel.hpp"

#include <cmath>
#include <string>

#include "bitadapt/errors.hpp"

namespace bitadapt {

namespace {

void check_probabilities(std::span<const double> values, const char* what) {
  for (double p : values)
    require(std::isfinite(p) && p >= 0.0 && p <= 1.0, ErrorKind::InvalidArgument,
            std::string(what) + ": probabilities must lie in [0, 1]");
}

}  // namespace

ChannelModel::ChannelModel(int width, std::variant<WordIndependentChannel, WordDependentChannel> model)
    : width_(width), model_(std::move(model)) {}

ChannelModel ChannelModel::independent(std::vector<double> p_down, std::vector<double> p_up) {
  const int width = static_cast<int>(p_down.size());
  check_width(width);
  require(p_up.size() == p_down.size(), ErrorKind::WidthMismatch, "p_down and p_up lengths differ");
  check_probabilities(p_down, "p_down");
  check_probabilities(p_up, "p_up");
  return {width, WordIndependentChannel{std::move(p_down), std::move(p_up)}};
}

ChannelModel ChannelModel::dependent(int width, std::vector<double> p_down, std::vector<double> p_up) {
  check_width(width);
  const std::size_t entries = word_count(width) * static_cast<std::size_t>(width);
  require(p_down.size() == entries && p_up.size() == entries, ErrorKind::WidthMismatch,
          "word-dependent channel tables must have 2^L * L entries");
  check_probabilities(p_down, "p_down");
  check_probabilities(p_up, "p_up");
  return {width, WordDependentChannel{std::move(p_down), std::move(p_up)}};
}

ChannelModel ChannelModel::dependent(int width, const BitProbabilityFn& p_down, const BitProbabilityFn& p_up) {
  check_width(width);
  const std::size_t entries = word_count(width) * static_cast<std::size_t>(width);
  std::vector<double> down(entries);
  std::vector<double> up(entries);
  for (WordValue x = 0; x < word_count(width); ++x) {
    for (int i = 0; i < width; ++i) {
      down[x * width + i] = p_down(x, i);
      up[x * width + i] = p_up(x, i);
    }
  }
  return dependent(width, std::move(down), std::move(up));
}

ChannelModel ChannelModel::zero(int width) {
  check_width(width);
  return independent(std::vector<double>(width, 0.0), std::vector<double>(width, 0.0));
}

double ChannelModel::p_down(WordValue x, int bit) const noexcept {
  if (const auto* ind = as_independent()) return ind->p_down[bit];
  return std::get<WordDependentChannel>(model_).p_down[x * width_ + bit];
}

double ChannelModel::p_up(WordValue x, int bit) const noexcept {
  if (const auto* ind = as_independent()) return ind->p_up[bit];
  return std::get<WordDependentChannel>(model_).p_up[x * width_ + bit];
}

std::vector<double> ChannelModel::word_vector(WordValue x) const {
  std::vector<double> v(2 * static_cast<std::size_t>(width_));
  for (int i = 0; i < width_; ++i) {
    v[i] = p_down(x, i);
    v[width_ + i] = p_up(x, i);
  }
  return v;
}

ChannelModel ChannelModel::to_dependent() const {
  if (!is_word_independent()) return *this;
  return dependent(
      width_, [this](WordValue x, int i) { return p_down(x, i); },
      [this](WordValue x, int i) { return p_up(x, i); });
}

}  // namespace bitadapt
