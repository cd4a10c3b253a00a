#pragma once

#include <stdexcept>
#include <string>

namespace bitadapt {

enum class ErrorKind {
  InvalidArgument,
  InvalidOperand,
  Capacity,
  WidthMismatch,
  EstimationFailure,
  InconsistentMeasurements,
  Infeasible,
  Io,
};

// All library failures derive from this; kind() lets callers map to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace bitadapt
