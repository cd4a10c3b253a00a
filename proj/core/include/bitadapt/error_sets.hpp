#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bitadapt/word.hpp"

namespace bitadapt {

inline constexpr int kMaxMaterializedWidth = 12;

// Set-valued function n -> {error vectors with signed distortion n} on
// n in [-(2^L - 1), 2^L - 1]. `support` is the union of bit positions the
// member vectors may touch; convolution requires disjoint supports.
class SignedDistortionMultiset {
 public:
  explicit SignedDistortionMultiset(int width, WordValue support = 0);

  /// chi_i: {-e_i} at -2^i, {0} at 0, {+e_i} at +2^i.
  static SignedDistortionMultiset unit_bit(int width, int bit);
  /// The neutral element of set convolution: {0} at 0.
  static SignedDistortionMultiset identity(int width);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] WordValue support() const noexcept { return support_; }
  [[nodiscard]] std::int64_t max_magnitude() const noexcept { return offset_; }

  [[nodiscard]] const std::vector<ErrorVector>& at(std::int64_t n) const;
  void insert(const ErrorVector& eps);

  /// |f|(n) for n in [-(2^L-1), 2^L-1], index n + (2^L - 1).
  [[nodiscard]] std::vector<std::uint64_t> counts() const;
  [[nodiscard]] std::uint64_t total() const noexcept;

  /// E_L^m = C(m) u C(-m); for m = 0 this is just C(0).
  [[nodiscard]] std::vector<ErrorVector> magnitude_set(std::uint64_t m) const;

 private:
  int width_;
  WordValue support_;
  std::int64_t offset_;
  std::vector<std::vector<ErrorVector>> sets_;
};

/// (a <> b)(n) = disjoint union over k + l = n of {u + v : u in a(k), v in b(l)}.
/// Throws InvalidOperand when the operands' supports overlap or widths differ.
[[nodiscard]] SignedDistortionMultiset set_convolve(const SignedDistortionMultiset& a,
                                                    const SignedDistortionMultiset& b);

// Cardinalities only: |C_L|(n) at index n + (2^L - 1). Valid up to kMaxWidth.
struct ErrorSetCounts {
  int width;
  std::vector<std::uint64_t> counts;

  [[nodiscard]] std::uint64_t at(std::int64_t n) const;
  [[nodiscard]] std::uint64_t magnitude_count(std::uint64_t m) const;
  [[nodiscard]] std::uint64_t total() const noexcept;
};

/// C_L = chi_0 <> ... <> chi_{L-1}. Materialization is limited to L <= 12.
[[nodiscard]] SignedDistortionMultiset build_error_sets(int width);

/// |C_L| through the standard convolution of per-bit count patterns.
[[nodiscard]] ErrorSetCounts build_error_set_counts(int width);

/// Standard discrete convolution of integer sequences.
[[nodiscard]] std::vector<std::uint64_t> convolve_counts(std::span<const std::uint64_t> a,
                                                         std::span<const std::uint64_t> b);

}  // namespace bitadapt
