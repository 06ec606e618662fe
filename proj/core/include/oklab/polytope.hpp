#pragma once

#include "oklab/lattice.hpp"
#include "oklab/polynomial.hpp"
#include "oklab/rational.hpp"

#include <memory>
#include <mutex>
#include <vector>

namespace oklab {

// normal . x >= offset
struct Halfspace {
  LatticePoint normal;
  Rational offset;
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

// normal . x == offset
struct Hyperplane {
  LatticePoint normal;
  Rational offset;
  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

class Polytope {
 public:
  explicit Polytope(std::size_t ambient_dim = 0) : ambient_dim_(ambient_dim) {}

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  int affine_dim() const noexcept { return affine_dim_; }
  bool empty() const noexcept { return affine_dim_ < 0; }
  // Sorted lexicographically; irredundant.
  const std::vector<RationalVector>& vertices() const noexcept { return vertices_; }
  const std::vector<Halfspace>& halfspaces() const noexcept { return facets_; }
  const std::vector<Hyperplane>& equalities() const noexcept { return equalities_; }
  // Integer points of the direction space of the affine hull.
  const Sublattice& hull_lattice() const noexcept { return hull_lattice_; }

  bool contains(const RationalVector& x) const;

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.vertices_ == b.vertices_;
  }

 private:
  friend Polytope convex_hull(const std::vector<RationalVector>&, std::size_t);
  std::size_t ambient_dim_;
  int affine_dim_ = -1;
  std::vector<RationalVector> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<Hyperplane> equalities_;
  Sublattice hull_lattice_;
};

// ambient_dim is only consulted when `points` is empty.
Polytope convex_hull(const std::vector<RationalVector>& points, std::size_t ambient_dim = 0);

Polytope minkowski_sum(const Polytope& p, const Polytope& q);
Polytope scale(const Polytope& p, const Rational& factor);
Polytope translate(const Polytope& p, const RationalVector& shift);

// Volume normalized so that a fundamental cell of `reference_lattice` has volume 1.
// Empty polytopes have volume 0. A single point has (0-dimensional) volume 1.
Rational integral_volume(const Polytope& p, const Sublattice& reference_lattice);
// Full-dimensional volume in Z^ambient_dim; zero when the polytope is lower-dimensional.
Rational euclidean_volume(const Polytope& p);

// Simplices (as vertex lists) of a pulling triangulation from lexicographically smallest vertices.
std::vector<std::vector<RationalVector>> pulling_triangulation(const Polytope& p);

struct ConeHRep {
  std::vector<LatticePoint> equalities;    // a . x == 0
  std::vector<LatticePoint> inequalities;  // a . x >= 0 (facets)
  // Equalities expanded into inequality pairs, followed by facets.
  std::vector<LatticePoint> as_inequalities() const;
};

class PolyCone {
 public:
  // Throws InvalidRay on a zero ray and DimensionMismatch on ragged input.
  PolyCone(std::size_t ambient_dim, std::vector<LatticePoint> rays);
  static PolyCone from_hrep(std::size_t ambient_dim, ConeHRep hrep);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  const std::vector<LatticePoint>& rays() const noexcept { return rays_; }
  // Computed once on first use; safe for concurrent readers.
  const ConeHRep& hrep() const;
  bool contains(const RationalVector& x) const;

 private:
  struct Cache {
    std::once_flag once;
    ConeHRep hrep;
  };
  std::size_t ambient_dim_;
  std::vector<LatticePoint> rays_;
  std::shared_ptr<Cache> cache_;
};

std::vector<LatticePoint> cone_hrep(const PolyCone& c);

// {y in R^r : (y, x) in c} for a cone in R^{r+s}.
Polytope cone_fiber(const PolyCone& c, std::size_t r, std::size_t s, const RationalVector& x);

// Vertices of {y : A y >= b, E y == f}; throws Unsupported when unbounded.
Polytope polytope_from_hrep(std::size_t ambient_dim, const std::vector<Halfspace>& halfspaces,
                            const std::vector<Hyperplane>& equalities);

struct MinkowskiPolynomial {
  MultidegreePolynomial polynomial;
  std::size_t held_out_checked = 0;
};

// Vol(l_1 K_1 + ... + l_s K_s) as an exact homogeneous polynomial of degree d = ambient dim.
MinkowskiPolynomial minkowski_polynomial(const std::vector<Polytope>& bodies);

// MV(K_1 repeated d_1 times, ...) = d! * c_d.
Rational mixed_volume(const std::vector<Polytope>& bodies, const Exponent& type);

}  // namespace oklab
