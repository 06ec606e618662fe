#pragma once

#include <stdexcept>
#include <string>

namespace oklab {

enum class ErrorKind {
  Validation,
  DimensionMismatch,
  NotASubgroup,
  MeasureMismatch,
  InvalidRay,
  Unsupported,
  EmptyTruncation,
  RegularityNotReached,
  ResourceLimit,
  InternalConsistency,
  Io,
};

// Every error carries the operation that raised it; the message should name
// the offending datum.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string operation, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& operation() const noexcept { return operation_; }

 private:
  ErrorKind kind_;
  std::string operation_;
};

const char* to_string(ErrorKind kind) noexcept;

// CLI exit status: 2 user/validation, 3 resource limit, 4 internal consistency.
int exit_code(ErrorKind kind) noexcept;

[[noreturn]] void fail(ErrorKind kind, const std::string& operation, const std::string& message);

}  // namespace oklab
