#pragma once

#include "oklab/point_set.hpp"

#include <cstdint>
#include <vector>

namespace oklab::detail {

// Counts #[S]_t for t = 0..t_max for a semigroup in Z^r x N generated by
// (values[g] | degrees[g]) with every degree >= 1. Pieces are dense bitmaps
// over their bounding boxes; only the last max-degree pieces are kept.
std::vector<std::uint64_t> dense_piece_counts(std::size_t r, const std::vector<IntPoint>& values,
                                              const std::vector<std::int64_t>& degrees, std::int64_t t_max);

}  // namespace oklab::detail
