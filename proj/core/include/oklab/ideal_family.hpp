#pragma once

#include "oklab/algebra.hpp"
#include "oklab/ideal.hpp"
#include "oklab/polytope.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace oklab {

struct PowersRule {
  MonomialIdeal base;             // J_n = base^n
};
struct ExplicitRule {
  std::vector<MonomialIdeal> members;  // J_1, J_2, ...; J_0 is the whole ring
};
struct FromBodyRule {
  Polytope body;                  // in R^d, nonnegative orthant
  std::int64_t h = 1;             // J_n is generated in degree n h
};
using FamilyRule = std::variant<PowersRule, ExplicitRule, FromBodyRule>;

class GradedIdealFamily {
 public:
  static GradedIdealFamily powers(MonomialIdeal base);
  static GradedIdealFamily m_adic(std::size_t num_vars) { return powers(MonomialIdeal::maximal_power(num_vars, 1)); }
  // Throws Validation unless J_i J_j is inside J_{i+j} whenever i + j is listed.
  static GradedIdealFamily explicit_members(std::size_t num_vars, std::vector<MonomialIdeal> members);
  // Lattice points of n K homogenized to degree n h, in d + 1 variables.
  static GradedIdealFamily from_body(Polytope body, std::int64_t h);

  const FamilyRule& rule() const noexcept { return rule_; }
  std::size_t num_vars() const noexcept { return num_vars_; }
  MonomialIdeal member(std::int64_t n) const;
  // Largest n with a member (Explicit), or nullopt when unbounded.
  std::optional<std::int64_t> last_member() const;
  // beta with max generator degree of J_n <= beta n.
  std::int64_t growth_bound() const;
  // c when J_n = m^(c n).
  std::optional<unsigned> maximal_power_step() const;

 private:
  GradedIdealFamily(std::size_t num_vars, FamilyRule rule) : num_vars_(num_vars), rule_(std::move(rule)) {}
  std::size_t num_vars_;
  FamilyRule rule_;
};

GradedIdealFamily body_to_family(const Polytope& body, std::int64_t h);

struct FamilyCheck {
  bool closed = true;
  std::optional<std::pair<std::int64_t, std::int64_t>> closure_failure;  // (i, j) with J_i J_j not in J_{i+j}
  bool growth_ok = true;
  std::optional<std::int64_t> growth_failure;
};
FamilyCheck check_family(const GradedIdealFamily& family, unsigned bound = 8);

enum class CountRoute { Auto, General };

// dim_k(J_1^{n_1} ... J_s^{n_s} / I^{n_0} J_1^{n_1} ... J_s^{n_s}) for fixed ideals.
// Auto uses a projected bitmap count when I is a power of m and every J_i is
// equigenerated; General multiplies generators and counts on the staircase grid.
Integer fixed_quotient_dim(const MonomialIdeal& I, const std::vector<MonomialIdeal>& J, std::int64_t n0, const Degree& n,
                           CountRoute route = CountRoute::Auto);

// dim_k(J(1)_{n_1} ... / I_{n_0} J(1)_{n_1} ...) for families.
Integer family_quotient_dim(const GradedIdealFamily& I, const std::vector<GradedIdealFamily>& J, std::int64_t n0,
                            const Degree& n);

// Tail fit of family_quotient_dim at (k n0, k n) against a k^d + b k^(d-1), d = num_vars.
double bhattacharya_limit(const GradedIdealFamily& I, const std::vector<GradedIdealFamily>& J, std::int64_t n0,
                          const Degree& n, std::int64_t n_max = 500);

// Degree-d homogeneous part of the eventual polynomial of fixed_quotient_dim,
// in variables (n0, n_1, ..., n_s).
struct BhattacharyaPolynomial {
  Polynomial full;
  Polynomial leading;
  std::int64_t start = 0;
};
BhattacharyaPolynomial bhattacharya_polynomial(const MonomialIdeal& I, const std::vector<MonomialIdeal>& J);

// e_{(d0, d)}(I | J) read off the leading part: coefficient times (d0+1)! d!.
Rational fixed_mixed_multiplicity(const BhattacharyaPolynomial& g, unsigned d0, const Exponent& d);

// Type vector (d0, d) with d0 + |d| = num_vars - 1. Ladder entries are
// e_{(d0,d)}(I_p | J(1)_p, ...) / p^num_vars.
MixedMultiplicityReport family_mixed_multiplicities(const GradedIdealFamily& I, const std::vector<GradedIdealFamily>& J,
                                                    unsigned d0, const Exponent& d,
                                                    const std::vector<std::int64_t>& p_schedule = default_p_schedule());

struct FamilyPositivity {
  bool positive = true;
  std::optional<std::vector<std::size_t>> violated;  // 1-based family indices
  std::int64_t p_used = 0;                           // analytic spreads repeated at p_used and 2 p_used
  std::vector<SubsetInequality> checks;              // rhs = spread of the product - 1
};
FamilyPositivity family_positivity(const std::vector<GradedIdealFamily>& J, unsigned d0, const Exponent& d,
                                   std::int64_t p_cap = 64);

struct BridgeResult {
  MixedMultiplicityReport ideal_report;
  double ideal_side = 0;
  Rational geometric_side;
  bool geometric_positive = true;
  std::optional<std::vector<std::size_t>> geometric_violated;  // 1-based body indices
  FamilyPositivity ideal_positivity;
  double rel_diff = 0;  // |ideal - geometric| / max(geometric, 1)
};
// Bodies in the nonnegative orthant of R^dim, |d| = dim.
BridgeResult mixed_volume_via_ideals(const std::vector<Polytope>& bodies, const Exponent& d,
                                     const std::vector<std::int64_t>& p_schedule = default_p_schedule());

// Smallest admissible homogenization degree: max(1, ceil of the largest coordinate sum).
std::int64_t minimal_homogenization(const Polytope& body);

}  // namespace oklab
