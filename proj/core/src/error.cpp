#include "oklab/error.hpp"

namespace oklab {

Error::Error(ErrorKind kind, std::string operation, const std::string& message)
    : std::runtime_error(operation + ": " + message), kind_(kind), operation_(std::move(operation)) {}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::NotASubgroup: return "not-a-subgroup";
    case ErrorKind::MeasureMismatch: return "measure-mismatch";
    case ErrorKind::InvalidRay: return "invalid-ray";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::EmptyTruncation: return "empty-truncation";
    case ErrorKind::RegularityNotReached: return "regularity-not-reached";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::InternalConsistency: return "internal-consistency";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ResourceLimit:
    case ErrorKind::RegularityNotReached: return 3;
    case ErrorKind::InternalConsistency: return 4;
    default: return 2;
  }
}

void fail(ErrorKind kind, const std::string& operation, const std::string& message) {
  throw Error(kind, operation, message);
}

}  // namespace oklab
