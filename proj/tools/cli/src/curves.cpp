#include "bitadapt_cli/curves.hpp"

#include <cstdio>
#include <fstream>

#include "bitadapt/errors.hpp"

namespace bitadapt::cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Series& Curves::add(std::string label, std::vector<double> x, std::vector<double> y) {
  require(x.size() == y.size(), ErrorKind::InvalidArgument, "series abscissa and values differ in length");
  series.push_back({std::move(label), std::move(x), std::move(y)});
  return series.back();
}

Series& Curves::add_indexed(std::string label, std::vector<double> y) {
  std::vector<double> x(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i);
  return add(std::move(label), std::move(x), std::move(y));
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string curves_csv(const Curves& curves, const nlohmann::json& annotation) {
  const bool labelled = !(curves.series.size() == 1 && curves.series.front().label.empty());
  std::string out = "# " + annotation.dump() + "\n";
  out += curves.abscissa + ",value" + (labelled ? ",series" : "") + "\n";
  for (const auto& s : curves.series) {
    const std::string label = labelled ? "," + csv_field(s.label) : "";
    for (std::size_t i = 0; i < s.x.size(); ++i) out += format_number(s.x[i]) + "," + format_number(s.y[i]) + label + "\n";
  }
  return out;
}

nlohmann::json curves_json(const Curves& curves, const nlohmann::json& annotation) {
  nlohmann::json series = nlohmann::json::array();
  for (const auto& s : curves.series) series.push_back({{"label", s.label}, {"x", s.x}, {"y", s.y}});
  return {{"scenario", annotation}, {"abscissa", curves.abscissa}, {"series", std::move(series)}};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::Io, "cannot write " + path.string());
  out << text;
  out.flush();
  require(static_cast<bool>(out), ErrorKind::Io, "write failed for " + path.string());
}

void emit_curves(const Curves& curves, const nlohmann::json& annotation, const std::filesystem::path& prefix) {
  auto csv = prefix;
  csv += ".csv";
  auto js = prefix;
  js += ".json";
  write_text_file(csv, curves_csv(curves, annotation));
  write_text_file(js, curves_json(curves, annotation).dump(2) + "\n");
}

}  // namespace bitadapt::cli
