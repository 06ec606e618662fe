#include "oklab/polynomial.hpp"

#include "oklab/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>

namespace oklab {

unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0U); }

Integer multi_factorial(const Exponent& e) {
  Integer out = 1;
  for (unsigned k : e) out *= factorial(k);
  return out;
}

std::vector<Exponent> exponents_of_degree(std::size_t num_vars, unsigned degree) {
  std::vector<Exponent> out;
  if (num_vars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponent cur(num_vars, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == num_vars) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      cur[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, degree);
  return out;
}

std::vector<Exponent> exponents_up_to_degree(std::size_t num_vars, unsigned degree) {
  std::vector<Exponent> out;
  for (unsigned q = 0; q <= degree; ++q) {
    auto part = exponents_of_degree(num_vars, q);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Rational monomial_value(const Exponent& e, std::span<const Rational> point) {
  Rational v = 1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (unsigned k = 0; k < e[i]; ++k) v *= point[i];
  }
  return v;
}

Polynomial::Polynomial(std::size_t num_vars, std::map<Exponent, Rational> terms) : num_vars_(num_vars) {
  for (auto& [e, c] : terms) {
    if (e.size() != num_vars) fail(ErrorKind::DimensionMismatch, "Polynomial", "exponent length differs from num_vars");
    if (c != 0) terms_.emplace(e, std::move(c));
  }
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total_degree(e)));
  return d;
}

Rational Polynomial::operator()(std::span<const Rational> point) const {
  if (point.size() != num_vars_) fail(ErrorKind::DimensionMismatch, "Polynomial::eval", "wrong number of arguments");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) sum += c * monomial_value(e, point);
  return sum;
}

Polynomial Polynomial::homogeneous_part(unsigned degree) const {
  std::map<Exponent, Rational> out;
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) == degree) out.emplace(e, c);
  }
  return Polynomial(num_vars_, std::move(out));
}

namespace {

std::string render(const std::map<Exponent, Rational>& terms, std::size_t num_vars, std::span<const std::string> names) {
  if (terms.empty()) return "0";
  std::string out;
  // Highest total degree first, lex-descending within a degree.
  std::vector<std::pair<Exponent, Rational>> ordered(terms.rbegin(), terms.rend());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return total_degree(a.first) > total_degree(b.first); });
  bool first = true;
  for (const auto& [e, c] : ordered) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < num_vars; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < names.size() ? names[i] : "n" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace

std::string to_string(const Polynomial& p, std::span<const std::string> names) {
  return render(p.terms(), p.num_vars(), names);
}

MultidegreePolynomial::MultidegreePolynomial(std::size_t num_vars, unsigned degree,
                                             std::map<Exponent, Rational> coeffs)
    : num_vars_(num_vars), degree_(degree) {
  for (auto& [e, c] : coeffs) {
    if (e.size() != num_vars || total_degree(e) != degree) {
      fail(ErrorKind::Validation, "MultidegreePolynomial", "exponent of wrong shape or total degree");
    }
    if (c != 0) coeffs_.emplace(e, std::move(c));
  }
}

MultidegreePolynomial MultidegreePolynomial::from_polynomial(const Polynomial& p, unsigned degree) {
  return MultidegreePolynomial(p.num_vars(), degree, p.homogeneous_part(degree).terms());
}

Rational MultidegreePolynomial::coefficient(const Exponent& d) const {
  auto it = coeffs_.find(d);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

Rational MultidegreePolynomial::mixed_value(const Exponent& d) const {
  if (d.size() != num_vars_ || total_degree(d) != degree_) {
    fail(ErrorKind::Validation, "mixed_value", "type vector must have length " + std::to_string(num_vars_) +
                                                   " and total " + std::to_string(degree_));
  }
  return coefficient(d) * Rational(multi_factorial(d));
}

Rational MultidegreePolynomial::operator()(std::span<const Rational> point) const { return as_polynomial()(point); }

std::string to_string(const MultidegreePolynomial& p, std::span<const std::string> names) {
  return render(p.coeffs(), p.num_vars(), names);
}

std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rational f = a[i][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a[i][col] == 0) continue;
      Rational f = a[i][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  return det;
}

Polynomial interpolate(std::size_t num_vars, const std::vector<Exponent>& basis,
                       const std::vector<std::vector<Rational>>& points, const std::vector<Rational>& values,
                       const char* operation) {
  if (points.size() != basis.size() || values.size() != basis.size()) {
    fail(ErrorKind::InternalConsistency, operation, "interpolation system is not square");
  }
  std::vector<std::vector<Rational>> a(points.size(), std::vector<Rational>(basis.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) a[i][j] = monomial_value(basis[j], points[i]);
  }
  auto x = solve_exact(std::move(a), values);
  if (!x) fail(ErrorKind::InternalConsistency, operation, "interpolation grid is not unisolvent");
  std::map<Exponent, Rational> terms;
  for (std::size_t j = 0; j < basis.size(); ++j) terms.emplace(basis[j], (*x)[j]);
  return Polynomial(num_vars, std::move(terms));
}

}  // namespace oklab
