#pragma once

#include "oklab/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace oklab {

class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::size_t ambient_dim) : coords_(ambient_dim) {}
  explicit LatticePoint(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  LatticePoint(std::initializer_list<long> coords);

  static LatticePoint from_int64(std::span<const std::int64_t> coords);

  std::size_t ambient_dim() const noexcept { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  Integer& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Integer>& coords() const noexcept { return coords_; }

  bool is_zero() const;
  RationalVector to_rational() const;
  // Divides by the gcd of the entries; the zero vector is left unchanged.
  LatticePoint primitive() const;

  LatticePoint& operator+=(const LatticePoint& other);
  LatticePoint& operator-=(const LatticePoint& other);
  LatticePoint& operator*=(const Integer& factor);
  friend LatticePoint operator+(LatticePoint a, const LatticePoint& b) { return a += b; }
  friend LatticePoint operator-(LatticePoint a, const LatticePoint& b) { return a -= b; }
  friend LatticePoint operator*(const Integer& f, LatticePoint a) { return a *= f; }
  friend LatticePoint operator-(LatticePoint a) { return a *= Integer(-1); }

  friend bool operator==(const LatticePoint& a, const LatticePoint& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const LatticePoint& a, const LatticePoint& b) { return a.coords_ < b.coords_; }

 private:
  std::vector<Integer> coords_;
};

Integer dot(const LatticePoint& a, const LatticePoint& b);
std::string to_string(const LatticePoint& p);

class IntMatrix {
 public:
  // An empty matrix still knows its column count; that is the zero-matrix marker.
  explicit IntMatrix(std::size_t num_cols = 0) : cols_(num_cols) {}
  // Throws DimensionMismatch when rows disagree on ambient_dim.
  IntMatrix(std::vector<LatticePoint> rows, std::size_t num_cols);
  explicit IntMatrix(std::vector<LatticePoint> rows);

  std::size_t num_rows() const noexcept { return rows_.size(); }
  std::size_t num_cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_.empty(); }
  const LatticePoint& row(std::size_t i) const { return rows_[i]; }
  const std::vector<LatticePoint>& rows() const noexcept { return rows_; }
  const Integer& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }

  void push_back(LatticePoint row);
  IntMatrix transposed() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) { return a.cols_ == b.cols_ && a.rows_ == b.rows_; }

 private:
  std::vector<LatticePoint> rows_;
  std::size_t cols_ = 0;
};

struct HermiteForm {
  IntMatrix basis;
  std::size_t rank = 0;
};

// Row-style Hermite normal form: zero rows dropped, pivots positive and
// strictly increasing in column, entries above each pivot reduced into [0, pivot).
HermiteForm hermite_normal_form(const IntMatrix& m);

// Diagonal of the Smith normal form (nonzero invariant factors only).
std::vector<Integer> smith_invariants(const IntMatrix& m);

// Rank over Q of a list of rows, computed fraction-free.
std::size_t rank_of(const IntMatrix& m);
std::size_t rank_of(std::span<const LatticePoint> rows, std::size_t num_cols);

class Sublattice {
 public:
  explicit Sublattice(std::size_t ambient_dim = 0) : basis_(ambient_dim) {}
  static Sublattice full(std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return basis_.num_cols(); }
  std::size_t rank() const noexcept { return basis_.num_rows(); }
  const IntMatrix& basis() const noexcept { return basis_; }

  bool contains(const LatticePoint& p) const;
  // Integer coefficients c with p = sum c_i basis_i, if p lies in the lattice.
  std::optional<std::vector<Integer>> coordinates(const LatticePoint& p) const;
  // Rational coefficients with p = sum c_i basis_i, if p lies in the span.
  std::optional<std::vector<Rational>> rational_coordinates(const RationalVector& p) const;
  // Columns where each basis row has its pivot.
  std::vector<std::size_t> pivot_columns() const;

  friend bool operator==(const Sublattice& a, const Sublattice& b) { return a.basis_ == b.basis_; }

 private:
  friend Sublattice group_generated(std::span<const LatticePoint>, std::size_t);
  explicit Sublattice(IntMatrix hermite_basis) : basis_(std::move(hermite_basis)) {}
  IntMatrix basis_;
};

Sublattice group_generated(std::span<const LatticePoint> points, std::size_t ambient_dim);
Sublattice group_generated(const std::vector<LatticePoint>& points);

struct SubgroupIndex {
  bool infinite = false;
  Integer value = 1;  // meaningful only when finite

  friend bool operator==(const SubgroupIndex&, const SubgroupIndex&) = default;
};
std::string to_string(const SubgroupIndex& index);

// [ambient : sub]; NotASubgroup when sub is not contained in ambient.
SubgroupIndex subgroup_index(const Sublattice& sub, const Sublattice& ambient);

// {x in Z^k : sum x_i row_i = 0} for the k rows of m.
Sublattice integer_left_kernel(const IntMatrix& m);
// Integer points of the rational span of the lattice.
Sublattice saturation(const Sublattice& lattice);
// {x in lattice : <f, x> = 0}.
Sublattice intersect_hyperplane(const Sublattice& lattice, const LatticePoint& functional);
// Integer points of the subspace where all the given functionals vanish.
Sublattice orthogonal_lattice(const IntMatrix& functionals);
Sublattice intersect(const Sublattice& a, const Sublattice& b);

}  // namespace oklab
