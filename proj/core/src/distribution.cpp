#include "bitadapt/distribution.hpp"

#include <cmath>
#include <string>

#include "bitadapt/errors.hpp"

namespace bitadapt {

namespace {

void check_pmf(std::span<const double> pmf, const char* what) {
  double total = 0.0;
  for (double p : pmf) {
    require(std::isfinite(p) && p >= 0.0, ErrorKind::InvalidArgument,
            std::string(what) + ": PMF entries must be finite and non-negative");
    total += p;
  }
  require(std::abs(total - 1.0) <= kNormalizationTolerance, ErrorKind::InvalidArgument,
          std::string(what) + ": PMF must sum to 1 (got " + std::to_string(total) + ")");
}

}  // namespace

InputDistribution::InputDistribution(int width, std::vector<double> pmf) : width_(width), pmf_(std::move(pmf)) {
  check_width(width);
  require(pmf_.size() == word_count(width), ErrorKind::WidthMismatch,
          "input PMF must have 2^L entries");
  check_pmf(pmf_, "input distribution");
}

InputDistribution InputDistribution::uniform(int width) {
  check_width(width);
  return {width, std::vector<double>(word_count(width), 1.0 / static_cast<double>(word_count(width)))};
}

InputDistribution InputDistribution::point_mass(int width, WordValue value) {
  check_width(width);
  std::vector<double> pmf(word_count(width), 0.0);
  require(value < pmf.size(), ErrorKind::InvalidArgument, "point mass value out of range");
  pmf[value] = 1.0;
  return {width, std::move(pmf)};
}

bool InputDistribution::is_uniform() const noexcept {
  const double u = 1.0 / static_cast<double>(pmf_.size());
  for (double p : pmf_)
    if (p != u) return false;
  return true;
}

std::vector<double> tail_from_pmf(std::span<const double> pmf) {
  std::vector<double> tail(pmf.size(), 0.0);
  for (std::size_t m = pmf.size() - 1; m-- > 0;) tail[m] = tail[m + 1] + pmf[m + 1];
  return tail;
}

DistortionDistribution::DistortionDistribution(int width, std::vector<double> pmf)
    : width_(width), pmf_(std::move(pmf)) {
  check_width(width);
  require(pmf_.size() == word_count(width), ErrorKind::WidthMismatch,
          "distortion PMF must have 2^L entries");
  check_pmf(pmf_, "distortion distribution");
  tail_ = tail_from_pmf(pmf_);
}

double DistortionDistribution::mean() const noexcept {
  // E[M] = sum_m T(m)
  double total = 0.0;
  for (double t : tail_) total += t;
  return total;
}

}  // namespace bitadapt
