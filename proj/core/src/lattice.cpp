#include "oklab/lattice.hpp"

#include "oklab/error.hpp"

#include <algorithm>
#include <utility>

namespace oklab {

namespace {

using Row = std::vector<Integer>;

void axpy(Row& target, const Integer& factor, const Row& source) {
  for (std::size_t j = 0; j < target.size(); ++j) target[j] -= factor * source[j];
}

bool is_zero_row(const Row& row) {
  return std::all_of(row.begin(), row.end(), [](const Integer& x) { return x == 0; });
}

std::vector<Row> to_rows(const IntMatrix& m) {
  std::vector<Row> rows;
  rows.reserve(m.num_rows());
  for (const auto& r : m.rows()) rows.push_back(r.coords());
  return rows;
}

IntMatrix from_rows(std::vector<Row> rows, std::size_t cols) {
  std::vector<LatticePoint> pts;
  pts.reserve(rows.size());
  for (auto& r : rows) pts.emplace_back(std::move(r));
  return IntMatrix(std::move(pts), cols);
}

// In-place row HNF on the first `cols` columns; returns the rank.
std::size_t hermite_in_place(std::vector<Row>& work, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < work.size(); ++col) {
    while (true) {
      std::size_t best = work.size();
      for (std::size_t i = r; i < work.size(); ++i) {
        if (work[i][col] == 0) continue;
        if (best == work.size() || abs(work[i][col]) < abs(work[best][col])) best = i;
      }
      if (best == work.size()) break;
      std::swap(work[r], work[best]);
      bool residue = false;
      for (std::size_t i = r + 1; i < work.size(); ++i) {
        if (work[i][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), work[i][col].get_mpz_t(), work[r][col].get_mpz_t());
        axpy(work[i], q, work[r]);
        if (work[i][col] != 0) residue = true;
      }
      if (!residue) break;
    }
    if (r >= work.size() || work[r][col] == 0) continue;
    if (work[r][col] < 0) {
      for (auto& x : work[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), work[i][col].get_mpz_t(), work[r][col].get_mpz_t());
      if (q != 0) axpy(work[i], q, work[r]);
    }
    ++r;
  }
  work.resize(r);
  return r;
}

}  // namespace

LatticePoint::LatticePoint(std::initializer_list<long> coords) {
  coords_.reserve(coords.size());
  for (long c : coords) coords_.emplace_back(c);
}

LatticePoint LatticePoint::from_int64(std::span<const std::int64_t> coords) {
  std::vector<Integer> out;
  out.reserve(coords.size());
  for (auto c : coords) out.emplace_back(static_cast<long>(c));
  return LatticePoint(std::move(out));
}

bool LatticePoint::is_zero() const { return is_zero_row(coords_); }

RationalVector LatticePoint::to_rational() const {
  std::vector<Rational> out(coords_.begin(), coords_.end());
  return RationalVector(std::move(out));
}

LatticePoint LatticePoint::primitive() const {
  Integer g = 0;
  for (const auto& c : coords_) g = gcd(g, c);
  if (g <= 1) return *this;
  LatticePoint out(*this);
  for (auto& c : out.coords_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return out;
}

LatticePoint& LatticePoint::operator+=(const LatticePoint& other) {
  if (other.ambient_dim() != ambient_dim()) fail(ErrorKind::DimensionMismatch, "LatticePoint::+", "dimensions differ");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

LatticePoint& LatticePoint::operator-=(const LatticePoint& other) {
  if (other.ambient_dim() != ambient_dim()) fail(ErrorKind::DimensionMismatch, "LatticePoint::-", "dimensions differ");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

LatticePoint& LatticePoint::operator*=(const Integer& factor) {
  for (auto& c : coords_) c *= factor;
  return *this;
}

Integer dot(const LatticePoint& a, const LatticePoint& b) {
  if (a.ambient_dim() != b.ambient_dim()) fail(ErrorKind::DimensionMismatch, "dot", "dimensions differ");
  Integer sum = 0;
  for (std::size_t i = 0; i < a.ambient_dim(); ++i) sum += a[i] * b[i];
  return sum;
}

std::string to_string(const LatticePoint& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.ambient_dim(); ++i) {
    if (i) out += ",";
    out += p[i].get_str();
  }
  return out + ")";
}

IntMatrix::IntMatrix(std::vector<LatticePoint> rows, std::size_t num_cols) : rows_(std::move(rows)), cols_(num_cols) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].ambient_dim() != cols_) {
      fail(ErrorKind::DimensionMismatch, "IntMatrix",
           "row " + std::to_string(i) + " has dimension " + std::to_string(rows_[i].ambient_dim()) + ", expected " +
               std::to_string(cols_));
    }
  }
}

IntMatrix::IntMatrix(std::vector<LatticePoint> rows) {
  cols_ = rows.empty() ? 0 : rows.front().ambient_dim();
  *this = IntMatrix(std::move(rows), cols_);
}

void IntMatrix::push_back(LatticePoint row) {
  if (rows_.empty() && cols_ == 0) cols_ = row.ambient_dim();
  if (row.ambient_dim() != cols_) {
    fail(ErrorKind::DimensionMismatch, "IntMatrix::push_back", "row " + to_string(row) + " has wrong dimension");
  }
  rows_.push_back(std::move(row));
}

IntMatrix IntMatrix::transposed() const {
  std::vector<LatticePoint> out(cols_, LatticePoint(rows_.size()));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[j][i] = rows_[i][j];
  }
  return IntMatrix(std::move(out), rows_.size());
}

HermiteForm hermite_normal_form(const IntMatrix& m) {
  auto work = to_rows(m);
  std::size_t rank = hermite_in_place(work, m.num_cols());
  return HermiteForm{from_rows(std::move(work), m.num_cols()), rank};
}

std::vector<Integer> smith_invariants(const IntMatrix& m) {
  auto a = to_rows(m);
  const std::size_t rows = a.size();
  const std::size_t cols = m.num_cols();
  std::vector<Integer> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 && (bi == rows || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == rows) return diag;
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        if (q != 0) axpy(a[i], q, a[t]);
        if (a[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        if (q != 0) {
          for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        }
        if (a[t][j] != 0) dirty = true;
      }
      if (dirty) continue;
      // Enforce divisibility of the remaining block by the pivot.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] += a[bad][j];
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

std::size_t rank_of(std::span<const LatticePoint> rows, std::size_t num_cols) {
  std::vector<std::vector<Rational>> a;
  a.reserve(rows.size());
  for (const auto& r : rows) a.emplace_back(r.coords().begin(), r.coords().end());
  std::size_t rank = 0;
  for (std::size_t col = 0; col < num_cols && rank < a.size(); ++col) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[rank], a[piv]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][col] == 0) continue;
      Rational f = a[i][col] / a[rank][col];
      for (std::size_t j = col; j < num_cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_of(const IntMatrix& m) { return rank_of(m.rows(), m.num_cols()); }

Sublattice Sublattice::full(std::size_t ambient_dim) {
  std::vector<LatticePoint> rows(ambient_dim, LatticePoint(ambient_dim));
  for (std::size_t i = 0; i < ambient_dim; ++i) rows[i][i] = 1;
  return Sublattice(IntMatrix(std::move(rows), ambient_dim));
}

std::vector<std::size_t> Sublattice::pivot_columns() const {
  std::vector<std::size_t> out;
  for (const auto& row : basis_.rows()) {
    std::size_t j = 0;
    while (row[j] == 0) ++j;
    out.push_back(j);
  }
  return out;
}

std::optional<std::vector<Integer>> Sublattice::coordinates(const LatticePoint& p) const {
  if (p.ambient_dim() != ambient_dim()) fail(ErrorKind::DimensionMismatch, "Sublattice::coordinates", to_string(p));
  Row rest = p.coords();
  auto pivots = pivot_columns();
  std::vector<Integer> coeffs(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    const auto& b = basis_.row(i).coords();
    const Integer& piv = b[pivots[i]];
    if (!mpz_divisible_p(rest[pivots[i]].get_mpz_t(), piv.get_mpz_t())) return std::nullopt;
    Integer c;
    mpz_divexact(c.get_mpz_t(), rest[pivots[i]].get_mpz_t(), piv.get_mpz_t());
    if (c != 0) axpy(rest, c, b);
    coeffs[i] = std::move(c);
  }
  if (!is_zero_row(rest)) return std::nullopt;
  return coeffs;
}

std::optional<std::vector<Rational>> Sublattice::rational_coordinates(const RationalVector& p) const {
  if (p.ambient_dim() != ambient_dim()) {
    fail(ErrorKind::DimensionMismatch, "Sublattice::rational_coordinates", to_string(p));
  }
  std::vector<Rational> rest = p.coords();
  auto pivots = pivot_columns();
  std::vector<Rational> coeffs(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    const auto& b = basis_.row(i).coords();
    Rational c = rest[pivots[i]] / Rational(b[pivots[i]]);
    if (c != 0) {
      for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= c * b[j];
    }
    coeffs[i] = std::move(c);
  }
  for (const auto& x : rest) {
    if (x != 0) return std::nullopt;
  }
  return coeffs;
}

bool Sublattice::contains(const LatticePoint& p) const { return coordinates(p).has_value(); }

Sublattice group_generated(std::span<const LatticePoint> points, std::size_t ambient_dim) {
  std::vector<LatticePoint> rows(points.begin(), points.end());
  IntMatrix m(std::move(rows), ambient_dim);
  return Sublattice(hermite_normal_form(m).basis);
}

Sublattice group_generated(const std::vector<LatticePoint>& points) {
  if (points.empty()) return Sublattice(0);
  return group_generated(points, points.front().ambient_dim());
}

std::string to_string(const SubgroupIndex& index) { return index.infinite ? "infinite" : index.value.get_str(); }

SubgroupIndex subgroup_index(const Sublattice& sub, const Sublattice& ambient) {
  if (sub.ambient_dim() != ambient.ambient_dim()) {
    fail(ErrorKind::DimensionMismatch, "subgroup_index", "ambient dimensions differ");
  }
  std::vector<LatticePoint> coords;
  for (const auto& b : sub.basis().rows()) {
    auto c = ambient.coordinates(b);
    if (!c) fail(ErrorKind::NotASubgroup, "subgroup_index", "basis vector " + to_string(b) + " not in ambient lattice");
    coords.emplace_back(std::move(*c));
  }
  if (sub.rank() < ambient.rank()) return SubgroupIndex{true, 0};
  Integer index = 1;
  for (const auto& d : smith_invariants(IntMatrix(std::move(coords), ambient.rank()))) index *= d;
  return SubgroupIndex{false, index};
}

Sublattice integer_left_kernel(const IntMatrix& m) {
  const std::size_t k = m.num_rows();
  const std::size_t n = m.num_cols();
  std::vector<Row> aug;
  aug.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    Row row = m.row(i).coords();
    row.resize(n + k);
    row[n + i] = 1;
    aug.push_back(std::move(row));
  }
  hermite_in_place(aug, n + k);
  std::vector<LatticePoint> kernel;
  for (auto& row : aug) {
    if (std::all_of(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n), [](const Integer& x) { return x == 0; })) {
      kernel.emplace_back(Row(row.begin() + static_cast<std::ptrdiff_t>(n), row.end()));
    }
  }
  return group_generated(kernel, k);
}

Sublattice orthogonal_lattice(const IntMatrix& functionals) {
  if (functionals.empty()) return Sublattice::full(functionals.num_cols());
  return integer_left_kernel(functionals.transposed());
}

Sublattice saturation(const Sublattice& lattice) {
  if (lattice.rank() == lattice.ambient_dim()) return Sublattice::full(lattice.ambient_dim());
  if (lattice.rank() == 0) return lattice;
  return orthogonal_lattice(orthogonal_lattice(lattice.basis()).basis());
}

Sublattice intersect_hyperplane(const Sublattice& lattice, const LatticePoint& functional) {
  std::vector<LatticePoint> values;
  for (const auto& b : lattice.basis().rows()) values.push_back(LatticePoint(std::vector<Integer>{dot(functional, b)}));
  auto coeffs = integer_left_kernel(IntMatrix(std::move(values), 1));
  std::vector<LatticePoint> pts;
  for (const auto& c : coeffs.basis().rows()) {
    LatticePoint x(lattice.ambient_dim());
    for (std::size_t i = 0; i < c.ambient_dim(); ++i) x += c[i] * lattice.basis().row(i);
    pts.push_back(std::move(x));
  }
  return group_generated(pts, lattice.ambient_dim());
}

Sublattice intersect(const Sublattice& a, const Sublattice& b) {
  if (a.ambient_dim() != b.ambient_dim()) fail(ErrorKind::DimensionMismatch, "intersect", "ambient dimensions differ");
  std::vector<LatticePoint> stacked = a.basis().rows();
  for (const auto& r : b.basis().rows()) stacked.push_back(r);
  auto kernel = integer_left_kernel(IntMatrix(std::move(stacked), a.ambient_dim()));
  std::vector<LatticePoint> pts;
  for (const auto& c : kernel.basis().rows()) {
    LatticePoint x(a.ambient_dim());
    for (std::size_t i = 0; i < a.rank(); ++i) x += c[i] * a.basis().row(i);
    pts.push_back(std::move(x));
  }
  return group_generated(pts, a.ambient_dim());
}

}  // namespace oklab
