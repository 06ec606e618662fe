#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace oklab {

using Integer = mpz_class;
using Rational = mpq_class;

// Canonical num/den; the raw mpq_class constructor does not reduce.
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p", "p/q" or "-p/q". The result is canonical.
Rational parse_rational(std::string_view text);

// Always "num/den" with den >= 1, so that the format is uniform in reports.
std::string format_rational(const Rational& value);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

// Nearest double when numerator and denominator are exact doubles; mpq's
// get_d truncates, which prints 8/5 as 1.5999999999999999.
double to_double(const Rational& value);

// Throws ResourceLimit when the value does not fit.
std::int64_t to_int64(const Integer& value, const char* operation);

class RationalVector {
 public:
  RationalVector() = default;
  explicit RationalVector(std::size_t ambient_dim) : coords_(ambient_dim) {}
  explicit RationalVector(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  RationalVector(std::initializer_list<Rational> coords) : coords_(coords) {}

  std::size_t ambient_dim() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }

  bool is_zero() const;

  RationalVector& operator+=(const RationalVector& other);
  RationalVector& operator-=(const RationalVector& other);
  RationalVector& operator*=(const Rational& factor);

  friend RationalVector operator+(RationalVector a, const RationalVector& b) { return a += b; }
  friend RationalVector operator-(RationalVector a, const RationalVector& b) { return a -= b; }
  friend RationalVector operator*(const Rational& f, RationalVector a) { return a *= f; }

  friend bool operator==(const RationalVector& a, const RationalVector& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const RationalVector& a, const RationalVector& b) { return a.coords_ < b.coords_; }

 private:
  std::vector<Rational> coords_;
};

Rational dot(const RationalVector& a, const RationalVector& b);

std::string to_string(const RationalVector& v);

}  // namespace oklab
