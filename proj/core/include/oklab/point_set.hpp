#pragma once

#include "oklab/lattice.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace oklab {

using Degree = std::vector<std::int64_t>;
using IntPoint = std::vector<std::int64_t>;

std::string to_string(const Degree& d);

// Finite set of points of Z^dim with bounded coordinates, stored as sorted
// packed 64-bit keys. Key order equals lexicographic order of the points.
class PointSet {
 public:
  explicit PointSet(std::size_t dim = 0) : dim_(dim) {}
  static PointSet from_points(std::size_t dim, const std::vector<IntPoint>& points);
  static PointSet interval(std::int64_t lo, std::int64_t hi);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return keys_.size(); }
  bool empty() const noexcept { return keys_.empty(); }
  IntPoint point(std::size_t i) const;
  std::vector<IntPoint> points() const;
  std::vector<LatticePoint> lattice_points() const;
  bool contains(std::span<const std::int64_t> p) const;
  bool subset_of(const PointSet& other) const;

  PointSet translated(std::span<const std::int64_t> shift) const;
  PointSet sumset(const PointSet& other) const;
  PointSet& unite(const PointSet& other);

  // Largest |coordinate| the packing supports.
  static std::int64_t coordinate_limit(std::size_t dim);

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.dim_ == b.dim_ && a.keys_ == b.keys_; }

  // Raw access for bulk unions in the enumeration code.
  const std::vector<std::uint64_t>& keys() const noexcept { return keys_; }
  static PointSet from_sorted_keys(std::size_t dim, std::vector<std::uint64_t> keys);
  static std::uint64_t key_shift(std::size_t dim, std::span<const std::int64_t> shift);

 private:
  std::size_t dim_;
  std::vector<std::uint64_t> keys_;
};

// n-fold sumset; n = 0 gives {0}.
PointSet iterated_sumset(const PointSet& s, unsigned n);

}  // namespace oklab
