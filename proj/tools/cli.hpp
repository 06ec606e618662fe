#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oklab::cli {

// Parses argv, runs one command and writes the report to `out` (or --output).
// Returns 0 on success, 2 on invalid input, 3 on resource limits, 4 when a
// cross-check fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oklab::cli
