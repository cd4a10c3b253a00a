#pragma once

#include <cstdint>

#include "bitadapt/channel.hpp"
#include "bitadapt/distribution.hpp"
#include "bitadapt/error_sets.hpp"
#include "bitadapt/word.hpp"

namespace bitadapt {

/// Pr(X - X_hat = eps | X = x) under conditionally independent bit errors.
[[nodiscard]] double conditional_error_probability(const ErrorVector& eps, const ChannelModel& channel,
                                                   WordValue x) noexcept;

/// P_eps: sum over compatible words x of Pr(eps | x) f_X(x).
[[nodiscard]] double error_vector_probability(const ErrorVector& eps, const ChannelModel& channel,
                                              const InputDistribution& input);

/// f_M(m) = sum over eps in E_L^m of P_eps, using materialized error sets (L <= 12).
[[nodiscard]] DistortionDistribution distortion_pmf_enumerative(const ChannelModel& channel,
                                                                const InputDistribution& input);

/// Same as above, reusing pre-built sets (their width must match).
[[nodiscard]] DistortionDistribution distortion_pmf_enumerative(const SignedDistortionMultiset& sets,
                                                                const ChannelModel& channel,
                                                                const InputDistribution& input);

/// Per-word route: for each word with nonzero mass, convolve its L two-point
/// signed per-bit distortion laws, fold by absolute value, and mix by f_X.
[[nodiscard]] DistortionDistribution distortion_pmf_per_word(const ChannelModel& channel,
                                                             const InputDistribution& input);

/// Sweeps bits LSB first, carrying (undecided high bits, partial signed sum).
/// Exact for word-independent channels and any input; O(L 2^L).
[[nodiscard]] DistortionDistribution distortion_pmf_bit_sweep(const WordIndependentChannel& channel,
                                                              const InputDistribution& input);

/// Fast path: bit sweep for word-independent channels, per-word convolution otherwise. L <= 16.
[[nodiscard]] DistortionDistribution distortion_pmf_fast(const ChannelModel& channel,
                                                         const InputDistribution& input);

inline constexpr int kBruteForceMaxWidth = 8;

/// Iterates all (x, x_hat) pairs. Independent verification oracle.
[[nodiscard]] DistortionDistribution brute_force_oracle(const ChannelModel& channel,
                                                        const InputDistribution& input,
                                                        int max_width = kBruteForceMaxWidth);

/// Empirical distortion distribution from n simulated transmissions.
/// Uses std::mt19937_64 seeded with `seed`; reproducible within one build.
[[nodiscard]] DistortionDistribution monte_carlo_distortion(const ChannelModel& channel,
                                                            const InputDistribution& input,
                                                            std::uint64_t samples, std::uint64_t seed);

}  // namespace bitadapt
