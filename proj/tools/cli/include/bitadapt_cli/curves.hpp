#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace bitadapt::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// A family of curves over one abscissa ("m" for distortion tails).
struct Curves {
  std::string abscissa = "m";
  std::vector<Series> series;

  Series& add(std::string label, std::vector<double> x, std::vector<double> y);
  /// Adds a series over x = 0..n-1.
  Series& add_indexed(std::string label, std::vector<double> y);
};

/// "%.17g".
[[nodiscard]] std::string format_number(double v);

/// CSV text: "# <annotation json>" line, header "<abscissa>,value[,series]",
/// then rows series by series in insertion order. The series column is
/// omitted when there is exactly one unlabeled series.
[[nodiscard]] std::string curves_csv(const Curves& curves, const nlohmann::json& annotation);

/// {"scenario": annotation, "abscissa": ..., "series": [{"label", "x", "y"}]}
[[nodiscard]] nlohmann::json curves_json(const Curves& curves, const nlohmann::json& annotation);

/// Writes <prefix>.csv and <prefix>.json. Throws Io on failure.
void emit_curves(const Curves& curves, const nlohmann::json& annotation, const std::filesystem::path& prefix);

/// Writes text verbatim; throws Io on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace bitadapt::cli
