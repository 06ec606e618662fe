#include <doctest.h>

#include "oklab/error.hpp"
#include "oklab/lattice.hpp"

#include <random>

using namespace oklab;

namespace {

IntMatrix matrix(std::initializer_list<LatticePoint> rows) { return IntMatrix(std::vector<LatticePoint>(rows)); }

// Oracle: determinant of a small integer matrix by cofactor expansion.
Integer cofactor_det(const std::vector<std::vector<long>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<long>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<long> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) row.push_back(m[i][k]);
      }
      minor.push_back(row);
    }
    Integer c = m[0][j] * cofactor_det(minor);
    total += (j % 2 == 0) ? c : Integer(-c);
  }
  return total;
}

bool is_hermite(const IntMatrix& h) {
  std::size_t last = 0;
  for (std::size_t i = 0; i < h.num_rows(); ++i) {
    std::size_t p = 0;
    while (p < h.num_cols() && h.at(i, p) == 0) ++p;
    if (p == h.num_cols() || h.at(i, p) <= 0) return false;
    if (i > 0 && p <= last) return false;
    for (std::size_t k = 0; k < i; ++k) {
      if (h.at(k, p) < 0 || h.at(k, p) >= h.at(i, p)) return false;
    }
    last = p;
  }
  return true;
}

}  // namespace

TEST_CASE("hermite normal form examples") {
  auto id = hermite_normal_form(matrix({{1, 0}, {0, 1}}));
  CHECK(id.rank == 2);
  CHECK(id.basis == matrix({{1, 0}, {0, 1}}));

  auto prop = hermite_normal_form(matrix({{1, 1}, {2, 2}}));
  CHECK(prop.rank == 1);
  CHECK(prop.basis == matrix({{1, 1}}));

  auto zero_row = hermite_normal_form(matrix({{2, 3}, {4, 6}, {0, 0}}));
  CHECK(zero_row.rank == 1);
  CHECK(zero_row.basis == matrix({{2, 3}}));

  CHECK(hermite_normal_form(IntMatrix(3)).rank == 0);
  CHECK_THROWS_AS(IntMatrix(std::vector<LatticePoint>{{1, 2}, {1, 2, 3}}, 2), Error);
}

TEST_CASE("group generated") {
  auto diag = group_generated({LatticePoint{2, 0}, LatticePoint{0, 3}});
  CHECK(diag.rank() == 2);
  CHECK(diag.basis() == matrix({{2, 0}, {0, 3}}));

  auto line = group_generated({LatticePoint{2, 3}, LatticePoint{4, 6}});
  CHECK(line.rank() == 1);
  CHECK(line.basis() == matrix({{2, 3}}));

  auto plane = group_generated({LatticePoint{1, 0, 1}, LatticePoint{0, 1, 1}, LatticePoint{1, 1, 2}});
  CHECK(plane.rank() == 2);

  auto none = group_generated(std::vector<LatticePoint>{}, 3);
  CHECK(none.rank() == 0);
  CHECK(none.ambient_dim() == 3);
}

TEST_CASE("subgroup index") {
  CHECK(subgroup_index(group_generated({LatticePoint{2, 0}, LatticePoint{0, 3}}), Sublattice::full(2)).value == 6);
  CHECK(subgroup_index(group_generated({LatticePoint{1, 1}}), Sublattice::full(2)).infinite);
  CHECK(subgroup_index(group_generated({LatticePoint{3, 0}}), group_generated({LatticePoint{1, 0}})).value == 3);
  CHECK_THROWS_AS(subgroup_index(group_generated({LatticePoint{1, 0}}), group_generated({LatticePoint{2, 0}})), Error);
  try {
    subgroup_index(group_generated({LatticePoint{0, 1}}), group_generated({LatticePoint{1, 0}}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotASubgroup);
  }
}

TEST_CASE("kernels, saturation and intersections") {
  auto k = integer_left_kernel(matrix({{1, 2}, {2, 4}, {0, 1}}));
  CHECK(k.rank() == 1);
  CHECK(k.basis() == matrix({{2, -1, 0}}));

  auto sat = saturation(group_generated({LatticePoint{2, 2}}));
  CHECK(sat.basis() == matrix({{1, 1}}));

  auto slice = intersect_hyperplane(Sublattice::full(2), LatticePoint{0, 1});
  CHECK(slice.basis() == matrix({{1, 0}}));

  auto both = intersect(group_generated({LatticePoint{2, 0}, LatticePoint{0, 1}}),
                        group_generated({LatticePoint{3, 0}, LatticePoint{0, 2}}));
  CHECK(both.basis() == matrix({{6, 0}, {0, 2}}));
}

TEST_CASE("property: HNF invariants on 100 random matrices") {
  std::mt19937_64 rng(20261017);
  std::uniform_int_distribution<long> entry(-6, 6);
  std::uniform_int_distribution<int> shape(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = static_cast<std::size_t>(shape(rng));
    const std::size_t cols = static_cast<std::size_t>(shape(rng));
    std::vector<LatticePoint> pts;
    for (std::size_t i = 0; i < rows; ++i) {
      LatticePoint p(cols);
      for (std::size_t j = 0; j < cols; ++j) p[j] = entry(rng);
      pts.push_back(p);
    }
    IntMatrix m(pts, cols);
    auto h = hermite_normal_form(m);
    CHECK(is_hermite(h.basis));
    CHECK(h.rank == rank_of(m));
    // Idempotence.
    CHECK(hermite_normal_form(h.basis).basis == h.basis);
    // Every input row lies in the span of the basis, and vice versa.
    auto lattice = group_generated(pts, cols);
    for (const auto& p : pts) CHECK(lattice.contains(p));
    auto back = group_generated(h.basis.rows(), cols);
    CHECK(back == lattice);
  }
}

TEST_CASE("property: index multiplicativity and determinant oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> diag(1, 5);
  std::uniform_int_distribution<long> off(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = trial % 2 == 0 ? 2 : 3;
    // L1 = rows of an upper-triangular matrix, L2 = L1 scaled row-wise.
    std::vector<std::vector<long>> b1(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      b1[i][i] = diag(rng);
      for (std::size_t j = i + 1; j < n; ++j) b1[i][j] = off(rng);
    }
    std::vector<LatticePoint> r1, r2;
    std::vector<std::vector<long>> b2 = b1;
    for (std::size_t i = 0; i < n; ++i) {
      long f = diag(rng);
      for (auto& x : b2[i]) x *= f;
      LatticePoint p1(n), p2(n);
      for (std::size_t j = 0; j < n; ++j) {
        p1[j] = b1[i][j];
        p2[j] = b2[i][j];
      }
      r1.push_back(p1);
      r2.push_back(p2);
    }
    auto l0 = Sublattice::full(n);
    auto l1 = group_generated(r1, n);
    auto l2 = group_generated(r2, n);
    auto i10 = subgroup_index(l1, l0);
    auto i21 = subgroup_index(l2, l1);
    auto i20 = subgroup_index(l2, l0);
    CHECK(i10.value == abs(cofactor_det(b1)));
    CHECK(i20.value == abs(cofactor_det(b2)));
    CHECK(i20.value == i21.value * i10.value);
  }
}
