#include "oklab/memory_guard.hpp"

#include "oklab/error.hpp"

#include <cstdlib>
#include <string>

namespace oklab {

std::size_t memory_limit_bytes() {
  static const std::size_t limit = [] {
    std::size_t mb = 1024;
    if (const char* env = std::getenv("OKLAB_MEMORY_LIMIT_MB")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) mb = static_cast<std::size_t>(v);
    }
    return mb * 1024 * 1024;
  }();
  return limit;
}

void require_memory(std::size_t bytes, const char* operation, const std::string& where) {
  if (bytes > memory_limit_bytes()) {
    fail(ErrorKind::ResourceLimit, operation,
         "memory guard exceeded at " + where + " (" + std::to_string(bytes / (1024 * 1024)) + " MB needed, limit " +
             std::to_string(memory_limit_bytes() / (1024 * 1024)) + " MB)");
  }
}

}  // namespace oklab
