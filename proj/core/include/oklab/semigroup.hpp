#pragma once

#include "oklab/lattice.hpp"
#include "oklab/point_set.hpp"
#include "oklab/polytope.hpp"
#include "oklab/staircase.hpp"

#include <memory>
#include <vector>

namespace oklab {

enum class SemigroupSource { Generators, Staircase, Restriction };

// Subsemigroup of Z^r x N^s. Elements are written (valuation | degree).
// Copies share the enumeration memo, which is guarded for concurrent use.
class GradedSemigroup {
 public:
  // Each generator has r + s entries and a nonzero degree part in N^s.
  static GradedSemigroup from_generators(std::size_t r, std::size_t s, std::vector<LatticePoint> generators);
  // r = 1. Throws Validation when closure fails for total degrees up to closure_bound.
  static GradedSemigroup from_staircase(StaircaseSpec spec, unsigned closure_bound = 8);
  // Elements of degree k * direction, regraded by k (so s = 1).
  static GradedSemigroup restriction(const GradedSemigroup& parent, Degree direction);

  std::size_t r() const noexcept;
  std::size_t s() const noexcept;
  SemigroupSource source() const noexcept;
  bool is_finitely_generated() const noexcept { return source() == SemigroupSource::Generators; }
  const std::vector<LatticePoint>& generators() const;
  const StaircaseSpec& staircase() const;
  const GradedSemigroup& parent() const;
  const Degree& direction() const;

  PointSet graded_piece(std::span<const std::int64_t> n) const;
  std::uint64_t piece_size(std::span<const std::int64_t> n) const;
  // #[S]_{k * direction} for k = 0..k_max.
  std::vector<std::uint64_t> counts_along(std::span<const std::int64_t> direction, std::int64_t k_max) const;
  // Elements with total degree in [1, bound].
  std::vector<LatticePoint> elements_up_to(unsigned bound) const;
  // The generators when finitely generated, otherwise elements_up_to(bound).
  std::vector<LatticePoint> proxy_generators(unsigned bound) const;

 private:
  struct Impl;
  explicit GradedSemigroup(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

// Invariants of a singly graded semigroup (s = 1).
struct SemigroupInvariants {
  Sublattice group;               // G(S) in Z^(r+1)
  Integer m = 1;                  // [Z : degrees of G(S)]
  SubgroupIndex ind;              // [boundary_lattice : boundary_group]
  bool strongly_nonneg = true;    // pointed cone meeting the degree-0 hyperplane only at 0
  std::size_t cone_dim = 0;       // rank of G(S), i.e. dim L(S)
  Sublattice boundary_lattice;    // integer points of L(S) in degree 0, as a lattice in Z^r
  Sublattice boundary_group;      // G(S) in degree 0, as a lattice in Z^r
  bool empirical = false;         // computed from elements up to a degree bound
};
SemigroupInvariants invariants(const GradedSemigroup& S, unsigned proxy_bound = 8);

struct OkounkovBody {
  Polytope body;                  // in R^r, at degree height `height`
  Integer height = 1;
  bool inner_approximation = false;
};
// Hull of { m * v / deg : (v | deg) generator }.
OkounkovBody okounkov_body(const GradedSemigroup& S, unsigned proxy_bound = 8);

struct LimitCheck {
  double estimate = 0;
  Rational predicted;
  double rel_err = 0;
  std::size_t q = 0;
  Rational volume;
  SubgroupIndex ind;
  Integer m = 1;
};
// Compares the growth of #[S]_{n m} with Vol_q(body) / ind(S).
LimitCheck kk_limit_check(const GradedSemigroup& S, std::int64_t n_max, unsigned proxy_bound = 8);

// Subsemigroup generated by [S]_p (with its degree p kept).
GradedSemigroup truncate(const GradedSemigroup& S, const Degree& p);

}  // namespace oklab
