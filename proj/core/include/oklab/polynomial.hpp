#pragma once

#include "oklab/rational.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace oklab {

using Exponent = std::vector<unsigned>;

unsigned total_degree(const Exponent& e);
// Product of the factorials of the entries.
Integer multi_factorial(const Exponent& e);
// All exponents in N^num_vars of total degree exactly `degree`, in lex-descending order.
std::vector<Exponent> exponents_of_degree(std::size_t num_vars, unsigned degree);
std::vector<Exponent> exponents_up_to_degree(std::size_t num_vars, unsigned degree);

Rational monomial_value(const Exponent& e, std::span<const Rational> point);

// Inhomogeneous polynomial with exact coefficients.
class Polynomial {
 public:
  explicit Polynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}
  Polynomial(std::size_t num_vars, std::map<Exponent, Rational> terms);

  std::size_t num_vars() const noexcept { return num_vars_; }
  const std::map<Exponent, Rational>& terms() const noexcept { return terms_; }
  Rational coefficient(const Exponent& e) const;
  // -1 for the zero polynomial.
  int degree() const;
  Rational operator()(std::span<const Rational> point) const;
  Polynomial homogeneous_part(unsigned degree) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::size_t num_vars_;
  std::map<Exponent, Rational> terms_;  // zero coefficients are never stored
};

std::string to_string(const Polynomial& p, std::span<const std::string> names = {});

// Homogeneous polynomial of fixed degree whose coefficient of n^d is e(d)/d!.
class MultidegreePolynomial {
 public:
  MultidegreePolynomial(std::size_t num_vars, unsigned degree) : num_vars_(num_vars), degree_(degree) {}
  // Throws Validation when some stored exponent has the wrong total degree.
  MultidegreePolynomial(std::size_t num_vars, unsigned degree, std::map<Exponent, Rational> coeffs);
  static MultidegreePolynomial from_polynomial(const Polynomial& p, unsigned degree);

  std::size_t num_vars() const noexcept { return num_vars_; }
  unsigned degree() const noexcept { return degree_; }
  const std::map<Exponent, Rational>& coeffs() const noexcept { return coeffs_; }

  Rational coefficient(const Exponent& d) const;
  // d! * c_d: mixed volume for Minkowski polynomials, e(d) for Hilbert polynomials.
  Rational mixed_value(const Exponent& d) const;
  Rational operator()(std::span<const Rational> point) const;
  Polynomial as_polynomial() const { return Polynomial(num_vars_, coeffs_); }

  friend bool operator==(const MultidegreePolynomial&, const MultidegreePolynomial&) = default;

 private:
  std::size_t num_vars_;
  unsigned degree_;
  std::map<Exponent, Rational> coeffs_;
};

std::string to_string(const MultidegreePolynomial& p, std::span<const std::string> names = {});

// Solves for the coefficients of `basis` that reproduce `values` at `points`
// exactly. The system must be square and nonsingular; otherwise throws
// InternalConsistency naming `operation`.
Polynomial interpolate(std::size_t num_vars, const std::vector<Exponent>& basis,
                       const std::vector<std::vector<Rational>>& points, const std::vector<Rational>& values,
                       const char* operation);

// Dense exact solve of a square system; nullopt when singular.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

Rational determinant(std::vector<std::vector<Rational>> a);

}  // namespace oklab
