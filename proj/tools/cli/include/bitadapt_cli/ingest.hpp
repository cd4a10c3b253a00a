#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "bitadapt/distribution.hpp"

namespace bitadapt::cli {

// Validated integer samples in [0, 2^L - 1].
struct SampleSet {
  int width = 8;
  std::vector<WordValue> samples;
  std::uint64_t rejected = 0;  // records outside the word range after the offset
};

/// Reads the first CSV column of every record. Blank lines and lines starting
/// with '#' are skipped. `offset` is added before the range check, so signed
/// samples map into [0, 2^L - 1] with offset 2^(L-1). An unparsable record is
/// an error naming its line; an empty result is an error.
[[nodiscard]] SampleSet read_samples(const std::filesystem::path& path, int width, std::int64_t offset = 0);

/// Empirical PMF: count / total in index order.
[[nodiscard]] InputDistribution empirical_distribution(const SampleSet& samples);

[[nodiscard]] InputDistribution ingest_samples(const std::filesystem::path& path, int width, std::int64_t offset = 0,
                                               std::uint64_t* rejected = nullptr);

}  // namespace bitadapt::cli
