#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "bitadapt/errors.hpp"

namespace bitadapt::cli::detail {

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("bad field '") + key + "': " + e.what());
  }
}

inline const nlohmann::json& section(const nlohmann::json& j, const char* key) {
  static const nlohmann::json empty = nlohmann::json::object();
  if (!j.is_object() || !j.contains(key)) return empty;
  require(j.at(key).is_object(), ErrorKind::InvalidArgument, std::string("field '") + key + "' must be an object");
  return j.at(key);
}

}  // namespace bitadapt::cli::detail
