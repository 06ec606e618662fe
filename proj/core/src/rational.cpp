#include "oklab/rational.hpp"

#include "oklab/error.hpp"

namespace oklab {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational value;
  if (s.empty() || value.set_str(s, 10) != 0) {
    fail(ErrorKind::Validation, "parse_rational", "malformed rational '" + s + "'");
  }
  if (value.get_den() == 0) {
    fail(ErrorKind::Validation, "parse_rational", "zero denominator in '" + s + "'");
  }
  value.canonicalize();
  return value;
}

std::string format_rational(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Integer factorial(unsigned n) {
  Integer result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

Integer binomial(unsigned n, unsigned k) {
  Integer result;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

std::int64_t to_int64(const Integer& value, const char* operation) {
  static_assert(sizeof(long) >= sizeof(std::int64_t));
  if (!mpz_fits_slong_p(value.get_mpz_t())) {
    fail(ErrorKind::ResourceLimit, operation, "integer " + value.get_str() + " exceeds the 64-bit enumeration range");
  }
  return static_cast<std::int64_t>(value.get_si());
}

bool RationalVector::is_zero() const {
  for (const auto& c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

RationalVector& RationalVector::operator+=(const RationalVector& other) {
  if (other.ambient_dim() != ambient_dim()) {
    fail(ErrorKind::DimensionMismatch, "RationalVector::+", "dimensions differ");
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

RationalVector& RationalVector::operator-=(const RationalVector& other) {
  if (other.ambient_dim() != ambient_dim()) {
    fail(ErrorKind::DimensionMismatch, "RationalVector::-", "dimensions differ");
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

RationalVector& RationalVector::operator*=(const Rational& factor) {
  for (auto& c : coords_) c *= factor;
  return *this;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.ambient_dim() != b.ambient_dim()) fail(ErrorKind::DimensionMismatch, "dot", "dimensions differ");
  Rational sum = 0;
  for (std::size_t i = 0; i < a.ambient_dim(); ++i) sum += a[i] * b[i];
  return sum;
}

std::string to_string(const RationalVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.ambient_dim(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + ")";
}

double to_double(const Rational& value) {
  if (mpz_sizeinbase(value.get_num_mpz_t(), 2) <= 53 && mpz_sizeinbase(value.get_den_mpz_t(), 2) <= 53) {
    return value.get_num().get_d() / value.get_den().get_d();
  }
  return value.get_d();
}

}  // namespace oklab
