#pragma once

#include "oklab/io.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace oklab {

// nonpoly, min, concave-pl, segre, golden.
const std::vector<std::string>& preset_names();

// Canonical {"schema_version": 1, "algebra": ...} document. Unknown names throw
// Validation listing the valid ones.
Json preset(std::string_view name);
MonomialAlgebra preset_algebra(std::string_view name);

}  // namespace oklab
