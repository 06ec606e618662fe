#pragma once

#include <cstddef>
#include <string>

namespace oklab {

// Budget for enumeration, read once from OKLAB_MEMORY_LIMIT_MB (default 1024).
std::size_t memory_limit_bytes();

// Throws ResourceLimit naming `operation` and `where` when `bytes` exceeds the budget.
void require_memory(std::size_t bytes, const char* operation, const std::string& where);

}  // namespace oklab
