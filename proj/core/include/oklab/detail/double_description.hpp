#pragma once

#include "oklab/lattice.hpp"

#include <vector>

namespace oklab::detail {

struct ConeGenerators {
  std::vector<LatticePoint> lineality;  // basis of the lineality space
  std::vector<LatticePoint> rays;       // extreme rays modulo lineality, primitive
};

// Generators of {x in R^n : <a, x> >= 0 for every a in inequalities}.
// Incremental double description with the combinatorial adjacency test.
ConeGenerators double_description(std::size_t n, const std::vector<LatticePoint>& inequalities);

// Removes from each vector its orthogonal projection onto span(basis) and
// rescales to a primitive integer vector. Used to canonicalize facet normals.
std::vector<LatticePoint> reduce_modulo(const std::vector<LatticePoint>& vectors, const std::vector<LatticePoint>& basis);

}  // namespace oklab::detail
