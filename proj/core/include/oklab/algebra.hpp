#pragma once

#include "oklab/polynomial.hpp"
#include "oklab/semigroup.hpp"

#include <optional>
#include <vector>

namespace oklab {

enum class AlgebraKind { FinitelyGenerated, RuleDefined };

// Monomial subalgebra of k[x_1..x_r][t_1..t_s]; dim [A]_n = #[S]_n.
class MonomialAlgebra {
 public:
  explicit MonomialAlgebra(GradedSemigroup semigroup, unsigned generation_bound = 8);
  static MonomialAlgebra from_generators(std::size_t r, std::size_t s, std::vector<LatticePoint> generators);
  static MonomialAlgebra from_staircase(StaircaseSpec spec);

  const GradedSemigroup& semigroup() const noexcept { return semigroup_; }
  std::size_t r() const noexcept { return semigroup_.r(); }
  std::size_t s() const noexcept { return semigroup_.s(); }
  AlgebraKind kind() const noexcept;
  // Degree bound used to stand in for generators of rule-defined algebras.
  unsigned generation_bound() const noexcept { return generation_bound_; }
  // [A]_{e_i} != 0 for each axis.
  const std::vector<bool>& axis_nonvanishing() const noexcept { return axis_nonvanishing_; }
  bool volume_ops_enabled() const;
  // Maximal dimension of leaves; always 1 for monomial algebras.
  static constexpr unsigned leaf_dim = 1;

 private:
  GradedSemigroup semigroup_;
  unsigned generation_bound_;
  std::vector<bool> axis_nonvanishing_;
};

std::uint64_t hilbert_function(const MonomialAlgebra& A, const Degree& n);

// A^(n) = sum_k [A]_{k n}, singly graded by k.
MonomialAlgebra veronese(const MonomialAlgebra& A, const Degree& n);

struct GlobalCone {
  PolyCone cone;                  // rays (valuation | degree)
  bool inner_approximation = false;
};
GlobalCone global_no_cone(const MonomialAlgebra& A);

// Krull dimension as the rank of the group generated by A's monomials.
std::size_t krull_dim(const MonomialAlgebra& A);
// Same for the subalgebra of monomials whose degree is supported on `axes` (0-based).
std::size_t dim_subalgebra(const MonomialAlgebra& A, const std::vector<std::size_t>& axes);

struct FiberVolume {
  Rational value;                 // exact unless `estimate`
  double approx = 0;
  bool estimate = false;          // counting fallback for non-polyhedral cones
  std::size_t q = 0;
  Polytope fiber;
  SubgroupIndex ind;
};
// ell_A * Vol_q(fiber of the global cone at x) / ind(A). The reference lattice is the
// degree-0 part of the saturated group of A, which every fiber is parallel to.
FiberVolume volume_fn_fiber(const MonomialAlgebra& A, const RationalVector& x, std::int64_t n_max = 500);

// Tail fit of dim [A]_{k n} against a k^q + b k^(q-1), q = krull_dim - s.
double volume_fn_count(const MonomialAlgebra& A, const Degree& n, std::int64_t n_max = 500);

struct FiberTheoremCheck {
  Polytope fiber;
  Polytope veronese_body;
  bool equal = false;
};
FiberTheoremCheck fiber_theorem_check(const MonomialAlgebra& A, const Degree& n);

// ind(A^(n)) from the Veronese itself, for comparison with volume_fn_fiber's closed form.
struct IndexSample {
  Degree n;
  SubgroupIndex veronese_ind;
  SubgroupIndex global_ind;
};
std::vector<IndexSample> index_uniformity(const MonomialAlgebra& A, const std::vector<Degree>& samples);

struct Decomposability {
  bool decomposable = true;
  std::optional<Degree> witness;  // first degree whose piece differs from the sum of axis pieces
};
Decomposability is_decomposable(const MonomialAlgebra& A, unsigned bound = 8);

// Generated by the axis pieces [A]_{k e_i}, 1 <= k <= a.
MonomialAlgebra truncation(const MonomialAlgebra& A, std::int64_t a);
// Generated by the pieces [A]_{p e_i}, regraded so p e_i has degree e_i.
MonomialAlgebra p_subalgebra(const MonomialAlgebra& A, std::int64_t p);

struct HilbertPolynomial {
  Polynomial full;                // dim [A]_n for n >= start componentwise
  MultidegreePolynomial leading{0, 0};  // degree-q part; leading.mixed_value(d) = e(d; A)
  std::size_t q = 0;
  std::int64_t start = 0;
  std::size_t held_out_checked = 0;
};
// A must be standard: generated in degrees e_1..e_s.
HilbertPolynomial hilbert_polynomial(const MonomialAlgebra& A, std::int64_t start_cap = 64);

enum class Provenance { Exact, FujitaLadder };

struct LadderStep {
  std::int64_t p = 0;
  Rational value;
};

struct MixedMultiplicityReport {
  Exponent d;
  Provenance provenance = Provenance::FujitaLadder;
  std::optional<Rational> exact;  // set when the ladder stabilized
  double value = 0;
  std::vector<LadderStep> ladder;
  bool positive = false;
};

// Ladder entries e(d; A~_[p]) / p^q. Exact when the last two agree, otherwise a
// Richardson step on the last two, never below the largest entry.
MixedMultiplicityReport ladder_report(Exponent d, std::vector<LadderStep> ladder);

std::vector<std::int64_t> default_p_schedule();

MixedMultiplicityReport mixed_multiplicities(const MonomialAlgebra& A, const Exponent& d,
                                             const std::vector<std::int64_t>& p_schedule = default_p_schedule(),
                                             unsigned decomposability_bound = 8);

struct SubsetInequality {
  std::vector<std::size_t> axes;  // 1-based, as printed
  std::int64_t lhs = 0;           // sum of d_j over the subset
  std::int64_t rhs = 0;           // dim(A_(J)) - |J|
};

struct PositivityResult {
  bool positive = true;
  std::optional<std::vector<std::size_t>> violated;  // 1-based axes
  std::vector<SubsetInequality> checks;
};
PositivityResult positivity(const MonomialAlgebra& A, const Exponent& d, unsigned decomposability_bound = 8);

// Nonempty subsets of {0..s-1} in increasing bitmask order.
std::vector<std::vector<std::size_t>> nonempty_subsets(std::size_t s);

}  // namespace oklab
