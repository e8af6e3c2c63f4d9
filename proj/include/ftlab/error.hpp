#pragma once

#include <stdexcept>
#include <string>

namespace ftlab {

enum class ErrorKind {
  BadVertexId,
  SelfLoop,
  DuplicateEdge,
  BadWeight,
  Disconnected,
  MixedInstance,
  TooManyFaults,
  DimensionMismatch,
  IndexOutOfRange,
  EmptyTreeFaults,
  PropertyViolation,
  BadSpec,
  BadConfig,
  IoError,
  MissingLabel,
  Undelivered,
};

const char* error_kind_name(ErrorKind k);

// Single exception type for the library; `kind` is what tests dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace ftlab
