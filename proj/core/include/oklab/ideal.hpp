#pragma once

#include "oklab/polynomial.hpp"
#include "oklab/rational.hpp"

#include <optional>
#include <vector>

namespace oklab {

// Monomial ideal of k[x_1..x_d], stored by its minimal generators (an antichain).
// No generators means the zero ideal.
class MonomialIdeal {
 public:
  explicit MonomialIdeal(std::size_t num_vars = 0) : num_vars_(num_vars) {}
  MonomialIdeal(std::size_t num_vars, std::vector<Exponent> generators);
  static MonomialIdeal unit(std::size_t num_vars);
  // m^n for the maximal ideal m = (x_1, ..., x_d).
  static MonomialIdeal maximal_power(std::size_t num_vars, unsigned n);

  std::size_t num_vars() const noexcept { return num_vars_; }
  const std::vector<Exponent>& min_gens() const noexcept { return gens_; }
  bool is_zero() const noexcept { return gens_.empty(); }
  // Common total degree of all minimal generators, if any.
  std::optional<unsigned> homogeneous_degree() const;
  unsigned max_generator_degree() const;

  bool contains(const Exponent& monomial) const;
  // other is a subset of this ideal.
  bool contains(const MonomialIdeal& other) const;

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  std::size_t num_vars_;
  std::vector<Exponent> gens_;  // sorted
};

std::string to_string(const MonomialIdeal& ideal);

MonomialIdeal product(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal power(const MonomialIdeal& ideal, unsigned n);

struct QuotientDim {
  Integer count;
  // Every generator of m^c * num lies in den.
  unsigned certificate = 0;
};

// dim_k(num / den) = number of monomials in num outside den. Requires den to be
// contained in num and cofinal in it (den contains m^c num); the certificate c
// is derived from the count and must not exceed degree_cap.
QuotientDim quotient_dim(const MonomialIdeal& num, const MonomialIdeal& den, unsigned degree_cap = 4096);

// 1 + dim of the Newton polytope of the generators; needs an equigenerated ideal.
std::size_t analytic_spread(const MonomialIdeal& ideal);

}  // namespace oklab
