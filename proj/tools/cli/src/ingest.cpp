#include "bitadapt_cli/ingest.hpp"

#include <charconv>
#include <fstream>
#include <string>

#include "bitadapt/errors.hpp"

namespace bitadapt::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

SampleSet read_samples(const std::filesystem::path& path, int width, std::int64_t offset) {
  check_width(width);
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open sample file " + path.string());
  SampleSet out;
  out.width = width;
  const auto limit = static_cast<std::int64_t>(width_mask(width));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto field = trim(text.substr(0, text.find(',')));
    std::int64_t raw = 0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), raw);
    require(ec == std::errc() && end == field.data() + field.size() && !field.empty(), ErrorKind::InvalidArgument,
            path.string() + ":" + std::to_string(lineno) + ": unparsable sample '" + std::string(field) + "'");
    const std::int64_t v = raw + offset;
    if (v < 0 || v > limit) {
      ++out.rejected;
      continue;
    }
    out.samples.push_back(static_cast<WordValue>(v));
  }
  require(!out.samples.empty(), ErrorKind::InvalidArgument,
          "no usable samples in " + path.string() + " (" + std::to_string(out.rejected) + " out of range)");
  return out;
}

InputDistribution empirical_distribution(const SampleSet& samples) {
  require(!samples.samples.empty(), ErrorKind::InvalidArgument, "empty sample set");
  std::vector<std::uint64_t> counts(word_count(samples.width), 0);
  for (WordValue v : samples.samples) {
    require(v <= width_mask(samples.width), ErrorKind::InvalidArgument, "sample out of range");
    ++counts[v];
  }
  const auto total = static_cast<double>(samples.samples.size());
  std::vector<double> pmf(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) pmf[i] = static_cast<double>(counts[i]) / total;
  return {samples.width, std::move(pmf)};
}

InputDistribution ingest_samples(const std::filesystem::path& path, int width, std::int64_t offset,
                                 std::uint64_t* rejected) {
  const auto set = read_samples(path, width, offset);
  if (rejected != nullptr) *rejected = set.rejected;
  return empirical_distribution(set);
}

}  // namespace bitadapt::cli
