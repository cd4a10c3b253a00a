#include "bitadapt/error_sets.hpp"

#include <string>

#include "bitadapt/errors.hpp"

namespace bitadapt {

namespace {

constexpr std::int64_t max_magnitude_for(int width) { return static_cast<std::int64_t>(word_count(width)) - 1; }

}  // namespace

SignedDistortionMultiset::SignedDistortionMultiset(int width, WordValue support)
    : width_(width), support_(support), offset_(0) {
  check_width(width);
  require(width <= kMaxMaterializedWidth, ErrorKind::Capacity,
          "explicit error sets are limited to L <= 12; use counts-only mode");
  offset_ = max_magnitude_for(width);
  sets_.resize(static_cast<std::size_t>(2 * offset_ + 1));
}

SignedDistortionMultiset SignedDistortionMultiset::unit_bit(int width, int bit) {
  require(bit >= 0 && bit < width, ErrorKind::InvalidArgument, "bit index out of range");
  const WordValue b = WordValue{1} << bit;
  SignedDistortionMultiset chi(width, b);
  chi.insert(ErrorVector(0, b, width));
  chi.insert(ErrorVector::zero(width));
  chi.insert(ErrorVector(b, 0, width));
  return chi;
}

SignedDistortionMultiset SignedDistortionMultiset::identity(int width) {
  SignedDistortionMultiset id(width, 0);
  id.insert(ErrorVector::zero(width));
  return id;
}

const std::vector<ErrorVector>& SignedDistortionMultiset::at(std::int64_t n) const {
  require(n >= -offset_ && n <= offset_, ErrorKind::InvalidArgument,
          "signed distortion " + std::to_string(n) + " outside the domain");
  return sets_[static_cast<std::size_t>(n + offset_)];
}

void SignedDistortionMultiset::insert(const ErrorVector& eps) {
  require(eps.width() == width_, ErrorKind::WidthMismatch, "error vector width mismatch");
  require((eps.support() & ~support_) == 0, ErrorKind::InvalidOperand,
          "error vector touches bits outside the multiset support");
  sets_[static_cast<std::size_t>(signed_distortion(eps) + offset_)].push_back(eps);
}

std::vector<std::uint64_t> SignedDistortionMultiset::counts() const {
  std::vector<std::uint64_t> c(sets_.size());
  for (std::size_t k = 0; k < sets_.size(); ++k) c[k] = sets_[k].size();
  return c;
}

std::uint64_t SignedDistortionMultiset::total() const noexcept {
  std::uint64_t n = 0;
  for (const auto& s : sets_) n += s.size();
  return n;
}

std::vector<ErrorVector> SignedDistortionMultiset::magnitude_set(std::uint64_t m) const {
  const auto n = static_cast<std::int64_t>(m);
  std::vector<ErrorVector> out = at(n);
  if (n != 0) {
    const auto& neg = at(-n);
    out.insert(out.end(), neg.begin(), neg.end());
  }
  return out;
}

SignedDistortionMultiset set_convolve(const SignedDistortionMultiset& a, const SignedDistortionMultiset& b) {
  require(a.width() == b.width(), ErrorKind::WidthMismatch, "set convolution operands differ in width");
  require((a.support() & b.support()) == 0, ErrorKind::InvalidOperand,
          "set convolution operands have overlapping support masks");
  SignedDistortionMultiset out(a.width(), a.support() | b.support());
  const std::int64_t span = a.max_magnitude();
  std::vector<std::int64_t> right_keys;
  for (std::int64_t l = -span; l <= span; ++l)
    if (!b.at(l).empty()) right_keys.push_back(l);
  for (std::int64_t k = -span; k <= span; ++k) {
    const auto& left = a.at(k);
    if (left.empty()) continue;
    for (std::int64_t l : right_keys) {
      const auto& right = b.at(l);
      for (const auto& u : left)
        for (const auto& v : right)
          out.insert(ErrorVector(u.pos_mask() | v.pos_mask(), u.neg_mask() | v.neg_mask(), a.width()));
    }
  }
  return out;
}

std::vector<std::uint64_t> convolve_counts(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::uint64_t ErrorSetCounts::at(std::int64_t n) const {
  const auto offset = max_magnitude_for(width);
  if (n < -offset || n > offset) return 0;
  return counts[static_cast<std::size_t>(n + offset)];
}

std::uint64_t ErrorSetCounts::magnitude_count(std::uint64_t m) const {
  const auto n = static_cast<std::int64_t>(m);
  return n == 0 ? at(0) : at(n) + at(-n);
}

std::uint64_t ErrorSetCounts::total() const noexcept {
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

SignedDistortionMultiset build_error_sets(int width) {
  // chi_0 is its own starting point; each further bit is one set convolution.
  SignedDistortionMultiset c = SignedDistortionMultiset::unit_bit(width, 0);
  for (int i = 1; i < width; ++i) c = set_convolve(c, SignedDistortionMultiset::unit_bit(width, i));
  return c;
}

ErrorSetCounts build_error_set_counts(int width) {
  check_width(width);
  // Count pattern of chi_i spans [-2^i, 2^i]: ones at both ends and the middle.
  std::vector<std::uint64_t> acc{1};
  for (int i = 0; i < width; ++i) {
    const std::size_t half = std::size_t{1} << i;
    std::vector<std::uint64_t> chi(2 * half + 1, 0);
    chi.front() = chi[half] = chi.back() = 1;
    acc = convolve_counts(acc, chi);
  }
  return {width, std::move(acc)};
}

}  // namespace bitadapt
