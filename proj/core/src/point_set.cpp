#include "oklab/point_set.hpp"

#include "oklab/error.hpp"

#include <algorithm>

namespace oklab {

namespace {

unsigned field_bits(std::size_t dim) { return dim == 0 ? 0 : std::min<unsigned>(40, static_cast<unsigned>(62 / dim)); }

std::uint64_t field_offset(std::size_t dim) { return dim == 0 ? 0 : std::uint64_t{1} << (field_bits(dim) - 1); }

std::uint64_t encode(std::span<const std::int64_t> p) {
  const std::size_t dim = p.size();
  const unsigned bits = field_bits(dim);
  const std::int64_t limit = PointSet::coordinate_limit(dim);
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    if (p[i] > limit || p[i] < -limit) {
      fail(ErrorKind::ResourceLimit, "PointSet", "coordinate " + std::to_string(p[i]) + " exceeds the packed range");
    }
    key = (key << bits) | static_cast<std::uint64_t>(p[i] + static_cast<std::int64_t>(field_offset(dim)));
  }
  return key;
}

IntPoint decode(std::uint64_t key, std::size_t dim) {
  const unsigned bits = field_bits(dim);
  const std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  IntPoint p(dim);
  for (std::size_t i = dim; i-- > 0;) {
    p[i] = static_cast<std::int64_t>(key & mask) - static_cast<std::int64_t>(field_offset(dim));
    key >>= bits;
  }
  return p;
}

void sort_unique(std::vector<std::uint64_t>& keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
}

}  // namespace

std::string to_string(const Degree& d) {
  std::string out = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(d[i]);
  }
  return out + ")";
}

std::int64_t PointSet::coordinate_limit(std::size_t dim) {
  if (dim == 0) return 0;
  // Half the field range, so that sums of two in-range points stay in range.
  return static_cast<std::int64_t>(field_offset(dim) / 2) - 1;
}

PointSet PointSet::from_points(std::size_t dim, const std::vector<IntPoint>& points) {
  PointSet out(dim);
  out.keys_.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != dim) fail(ErrorKind::DimensionMismatch, "PointSet", "point of wrong dimension");
    out.keys_.push_back(encode(p));
  }
  sort_unique(out.keys_);
  return out;
}

PointSet PointSet::interval(std::int64_t lo, std::int64_t hi) {
  PointSet out(1);
  for (std::int64_t j = lo; j <= hi; ++j) out.keys_.push_back(encode(std::span<const std::int64_t>(&j, 1)));
  return out;
}

PointSet PointSet::from_sorted_keys(std::size_t dim, std::vector<std::uint64_t> keys) {
  PointSet out(dim);
  out.keys_ = std::move(keys);
  return out;
}

std::uint64_t PointSet::key_shift(std::size_t dim, std::span<const std::int64_t> shift) {
  const unsigned bits = field_bits(dim);
  std::uint64_t delta = 0;
  for (std::size_t i = 0; i < dim; ++i) delta = (delta << bits) + static_cast<std::uint64_t>(shift[i]);
  return delta;
}

IntPoint PointSet::point(std::size_t i) const { return decode(keys_[i], dim_); }

std::vector<IntPoint> PointSet::points() const {
  std::vector<IntPoint> out;
  out.reserve(keys_.size());
  for (auto k : keys_) out.push_back(decode(k, dim_));
  return out;
}

std::vector<LatticePoint> PointSet::lattice_points() const {
  std::vector<LatticePoint> out;
  out.reserve(keys_.size());
  for (auto k : keys_) out.push_back(LatticePoint::from_int64(decode(k, dim_)));
  return out;
}

bool PointSet::contains(std::span<const std::int64_t> p) const {
  if (p.size() != dim_) return false;
  const std::int64_t limit = coordinate_limit(dim_);
  for (auto x : p) {
    if (x > limit || x < -limit) return false;
  }
  return std::binary_search(keys_.begin(), keys_.end(), encode(p));
}

bool PointSet::subset_of(const PointSet& other) const {
  return dim_ == other.dim_ && std::includes(other.keys_.begin(), other.keys_.end(), keys_.begin(), keys_.end());
}

PointSet PointSet::translated(std::span<const std::int64_t> shift) const {
  if (shift.size() != dim_) fail(ErrorKind::DimensionMismatch, "PointSet::translated", "shift of wrong dimension");
  PointSet out(dim_);
  out.keys_.reserve(keys_.size());
  for (auto k : keys_) {
    auto p = decode(k, dim_);
    for (std::size_t i = 0; i < dim_; ++i) p[i] += shift[i];
    out.keys_.push_back(encode(p));
  }
  return out;
}

PointSet PointSet::sumset(const PointSet& other) const {
  if (other.dim_ != dim_) fail(ErrorKind::DimensionMismatch, "PointSet::sumset", "dimensions differ");
  PointSet out(dim_);
  out.keys_.reserve(keys_.size() * other.keys_.size());
  for (auto a : keys_) {
    auto pa = decode(a, dim_);
    for (auto b : other.keys_) {
      auto pb = decode(b, dim_);
      for (std::size_t i = 0; i < dim_; ++i) pb[i] += pa[i];
      out.keys_.push_back(encode(pb));
    }
  }
  sort_unique(out.keys_);
  return out;
}

PointSet& PointSet::unite(const PointSet& other) {
  if (other.dim_ != dim_) fail(ErrorKind::DimensionMismatch, "PointSet::unite", "dimensions differ");
  std::vector<std::uint64_t> merged;
  merged.reserve(keys_.size() + other.keys_.size());
  std::set_union(keys_.begin(), keys_.end(), other.keys_.begin(), other.keys_.end(), std::back_inserter(merged));
  keys_ = std::move(merged);
  return *this;
}

PointSet iterated_sumset(const PointSet& s, unsigned n) {
  PointSet out = PointSet::from_points(s.dim(), {IntPoint(s.dim(), 0)});
  for (unsigned i = 0; i < n; ++i) out = out.sumset(s);
  return out;
}

}  // namespace oklab
