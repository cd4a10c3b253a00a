#pragma once

#include <span>
#include <vector>

#include "bitadapt/word.hpp"

namespace bitadapt {

inline constexpr double kNormalizationTolerance = 1e-12;

// PMF over all 2^L transmitted words, indexed by unsigned word value.
class InputDistribution {
 public:
  InputDistribution(int width, std::vector<double> pmf);

  static InputDistribution uniform(int width);
  static InputDistribution point_mass(int width, WordValue value);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] std::span<const double> pmf() const noexcept { return pmf_; }
  [[nodiscard]] double operator[](WordValue x) const { return pmf_[x]; }

  /// True when every bit is an independent fair coin (uniform input).
  [[nodiscard]] bool is_uniform() const noexcept;

 private:
  int width_;
  std::vector<double> pmf_;
};

// PMF f_M and tail T_M(m) = Pr(M > m) of integer value distortion, m in [0, 2^L - 1].
class DistortionDistribution {
 public:
  /// Builds from a PMF; the tail is the suffix sum of pmf[i] for i > m.
  DistortionDistribution(int width, std::vector<double> pmf);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] std::span<const double> pmf() const noexcept { return pmf_; }
  [[nodiscard]] std::span<const double> tail() const noexcept { return tail_; }
  [[nodiscard]] std::size_t size() const noexcept { return pmf_.size(); }

  [[nodiscard]] double mean() const noexcept;

 private:
  int width_;
  std::vector<double> pmf_;
  std::vector<double> tail_;
};

/// Suffix sums: out[m] = sum_{i > m} pmf[i]; out.back() == 0.
[[nodiscard]] std::vector<double> tail_from_pmf(std::span<const double> pmf);

}  // namespace bitadapt
