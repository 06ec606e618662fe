#include <doctest.h>

#include "oklab/error.hpp"
#include "oklab/memory_guard.hpp"
#include "oklab/semigroup.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <set>

using namespace oklab;

namespace {

GradedSemigroup singly(std::size_t r, std::vector<LatticePoint> gens) {
  return GradedSemigroup::from_generators(r, 1, std::move(gens));
}

StaircaseSpec nonpoly_spec() {
  return StaircaseSpec{2, CeilSqrtQuadratic{{{4, 0}, {0, 4}}}, LinearBound{LinearForm{{2, 2}, 1}}};
}

StaircaseSpec min_spec() {
  return StaircaseSpec{2, LinearBound{LinearForm{{0, 0}, 1}}, PiecewiseLinearMin{{LinearForm{{1, 0}, 1}, LinearForm{{0, 1}, 1}}}};
}

StaircaseSpec golden_spec() { return StaircaseSpec{1, LinearBound{LinearForm{{0}, 1}}, LinearBound{LinearForm{{89}, 55}}}; }

// Oracle: valuation parts of all sums of generators whose degrees add up to n.
std::set<IntPoint> brute_force_piece(std::size_t r, std::size_t s, const std::vector<LatticePoint>& gens, const Degree& n) {
  std::set<IntPoint> out;
  std::function<void(std::size_t, Degree, IntPoint)> rec = [&](std::size_t start, Degree left, IntPoint acc) {
    if (std::all_of(left.begin(), left.end(), [](std::int64_t x) { return x == 0; })) {
      out.insert(acc);
      return;
    }
    for (std::size_t g = start; g < gens.size(); ++g) {
      Degree next = left;
      bool ok = true;
      for (std::size_t j = 0; j < s; ++j) {
        next[j] -= gens[g][r + j].get_si();
        if (next[j] < 0) ok = false;
      }
      if (!ok) continue;
      IntPoint a = acc;
      for (std::size_t i = 0; i < r; ++i) a[i] += gens[g][i].get_si();
      rec(g, next, a);
    }
  };
  rec(0, n, IntPoint(r, 0));
  return out;
}

std::set<IntPoint> as_set(const PointSet& p) {
  auto pts = p.points();
  return std::set<IntPoint>(pts.begin(), pts.end());
}

}  // namespace

TEST_CASE("graded pieces") {
  auto s = singly(1, {LatticePoint{0, 1}, LatticePoint{1, 1}, LatticePoint{2, 1}});
  auto piece = s.graded_piece(Degree{3});
  CHECK(piece.size() == 7);
  CHECK(as_set(piece) == brute_force_piece(1, 1, s.generators(), Degree{3}));
  CHECK(s.graded_piece(Degree{0}).points() == std::vector<IntPoint>{IntPoint{0}});
  CHECK(s.piece_size(Degree{3}) == 7);

  auto nonpoly = GradedSemigroup::from_staircase(nonpoly_spec());
  CHECK(nonpoly.graded_piece(Degree{1, 1}).points() == std::vector<IntPoint>{IntPoint{3}, IntPoint{4}});
  CHECK(nonpoly.graded_piece(Degree{0, 0}).points() == std::vector<IntPoint>{IntPoint{0}});
  // Count formula 2(n1+n2) - ceil(2 sqrt(n1^2+n2^2)) + 1 with an independent floating evaluation.
  for (std::int64_t a = 0; a <= 12; ++a) {
    for (std::int64_t b = 0; b <= 12; ++b) {
      const double root = 2 * std::sqrt(static_cast<double>(a * a + b * b));
      auto lower = static_cast<std::int64_t>(std::ceil(root - 1e-12));
      CHECK(nonpoly.piece_size(Degree{a, b}) == static_cast<std::uint64_t>(2 * (a + b) - lower + 1));
    }
  }
  CHECK_THROWS_AS(s.graded_piece(Degree{-1}), Error);
  CHECK_THROWS_AS(s.graded_piece(Degree{1, 1}), Error);
}

TEST_CASE("property: generator DP matches brute force") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long> val(-2, 3);
  std::uniform_int_distribution<long> deg(0, 2);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t r = 1 + static_cast<std::size_t>(trial % 2);
    const std::size_t s = 1 + static_cast<std::size_t>(trial % 3 == 0);
    std::vector<LatticePoint> gens;
    for (int g = 0; g < 4; ++g) {
      LatticePoint p(r + s);
      for (std::size_t i = 0; i < r; ++i) p[i] = val(rng);
      long tot = 0;
      for (std::size_t j = 0; j < s; ++j) {
        p[r + j] = deg(rng);
        tot += p[r + j].get_si();
      }
      if (tot == 0) p[r] = 1;
      gens.push_back(p);
    }
    auto S = GradedSemigroup::from_generators(r, s, gens);
    for (const auto& n : degrees_up_to(s, 4)) CHECK(as_set(S.graded_piece(n)) == brute_force_piece(r, s, gens, n));
    if (s == 1) {
      auto counts = S.counts_along(Degree{1}, 6);
      for (std::int64_t k = 0; k <= 6; ++k) CHECK(counts[static_cast<std::size_t>(k)] == brute_force_piece(r, s, gens, Degree{k}).size());
    }
  }
}

TEST_CASE("staircase closure") {
  CHECK_FALSE(find_closure_violation(nonpoly_spec(), 10));
  CHECK_FALSE(find_closure_violation(min_spec(), 10));
  CHECK_FALSE(find_closure_violation(golden_spec(), 60));
  // ceil(sqrt(4 n1 n2)) is 0 on both axes but 2 at (1,1), so the lower bound is not subadditive.
  StaircaseSpec bad{2, CeilSqrtQuadratic{{{0, 2}, {2, 0}}}, LinearBound{LinearForm{{2, 2}, 1}}};
  CHECK(find_closure_violation(bad, 8).has_value());
  CHECK_THROWS_AS(GradedSemigroup::from_staircase(bad), Error);
}

TEST_CASE("invariants of hand examples") {
  auto a = invariants(singly(1, {LatticePoint{0, 1}, LatticePoint{2, 1}}));
  CHECK(a.m == 1);
  CHECK(a.ind.value == 2);
  CHECK(a.strongly_nonneg);
  CHECK(a.cone_dim == 2);

  auto b = invariants(singly(1, {LatticePoint{0, 2}, LatticePoint{3, 2}}));
  CHECK(b.m == 2);
  CHECK(b.ind.value == 3);

  auto c = invariants(singly(1, {LatticePoint{1, 1}}));
  CHECK(c.m == 1);
  CHECK(c.ind.value == 1);
  CHECK(c.cone_dim == 1);
  CHECK(c.boundary_lattice.rank() == 0);

  auto golden = invariants(GradedSemigroup::from_staircase(golden_spec()));
  CHECK(golden.empirical);
  CHECK(golden.ind.value == 1);
}

TEST_CASE("Okounkov bodies") {
  auto a = okounkov_body(singly(1, {LatticePoint{0, 1}, LatticePoint{2, 1}}));
  CHECK(a.body == convex_hull({RationalVector{0}, RationalVector{2}}));
  CHECK(a.height == 1);
  auto b = okounkov_body(singly(1, {LatticePoint{0, 2}, LatticePoint{3, 2}}));
  CHECK(b.body == convex_hull({RationalVector{0}, RationalVector{3}}));
  CHECK(b.height == 2);
  auto tri = okounkov_body(singly(2, {LatticePoint{0, 0, 1}, LatticePoint{1, 0, 1}, LatticePoint{0, 1, 1}}));
  CHECK(tri.body == convex_hull({RationalVector{0, 0}, RationalVector{1, 0}, RationalVector{0, 1}}));
  CHECK(okounkov_body(GradedSemigroup::from_staircase(golden_spec())).inner_approximation);
}

TEST_CASE("limit checks on hand examples") {
  auto three = kk_limit_check(singly(1, {LatticePoint{0, 1}, LatticePoint{1, 1}, LatticePoint{2, 1}}), 200);
  CHECK(three.predicted == 2);
  CHECK(three.rel_err < 1e-6);
  auto ind3 = kk_limit_check(singly(1, {LatticePoint{0, 2}, LatticePoint{3, 2}}), 200);
  CHECK(ind3.predicted == 1);
  CHECK(ind3.rel_err < 1e-6);
  auto ind2 = kk_limit_check(singly(1, {LatticePoint{0, 1}, LatticePoint{2, 1}}), 200);
  CHECK(ind2.predicted == 1);
  CHECK(ind2.rel_err < 1e-6);
  auto point = kk_limit_check(singly(1, {LatticePoint{0, 1}}), 50);
  CHECK(point.q == 0);
  CHECK(point.predicted == 1);
  CHECK(point.estimate == doctest::Approx(1.0));
}

TEST_CASE("truncations") {
  auto nonpoly = GradedSemigroup::from_staircase(nonpoly_spec());
  auto t = truncate(nonpoly, Degree{1, 1});
  CHECK(t.generators() == std::vector<LatticePoint>{LatticePoint{3, 1, 1}, LatticePoint{4, 1, 1}});

  auto s = singly(1, {LatticePoint{0, 2}, LatticePoint{1, 3}, LatticePoint{3, 2}});
  auto ts = truncate(s, Degree{6});
  for (std::int64_t k = 0; k <= 24; ++k) CHECK(ts.graded_piece(Degree{k}).subset_of(s.graded_piece(Degree{k})));
  CHECK_THROWS_AS(truncate(s, Degree{1}), Error);

  // Golden staircase: widths of the truncated bodies (per unit degree) grow along divisibility chains.
  auto golden = GradedSemigroup::from_staircase(golden_spec());
  auto width = [&](std::int64_t p) {
    auto ob = okounkov_body(truncate(golden, Degree{p}));
    const auto& v = ob.body.vertices();
    return Rational((v.back()[0] - v.front()[0]) / ob.height);
  };
  for (std::int64_t p : {1, 2, 3, 5, 11}) {
    for (std::int64_t k : {2, 3, 5}) CHECK(width(p) <= width(p * k));
  }
  CHECK(width(55) == Rational(89, 55));
  for (std::int64_t p = 1; p <= 120; ++p) CHECK(width(p) <= Rational(89, 55));
}

TEST_CASE("property: sandwich containments") {
  std::vector<GradedSemigroup> suite{singly(1, {LatticePoint{0, 1}, LatticePoint{1, 1}, LatticePoint{2, 1}}),
                                     singly(1, {LatticePoint{0, 2}, LatticePoint{3, 2}}),
                                     singly(2, {LatticePoint{0, 0, 1}, LatticePoint{2, 1, 2}, LatticePoint{1, 3, 3}}),
                                     GradedSemigroup::from_staircase(golden_spec())};
  for (const auto& S : suite) {
    auto m = invariants(S).m.get_si();
    for (std::int64_t p = 1; p <= 6; ++p) {
      auto base = S.graded_piece(Degree{p * m});
      if (base.empty()) continue;
      auto hat = truncate(S, Degree{p * m});
      for (unsigned n = 1; n <= 6; ++n) {
        auto sums = iterated_sumset(base, n);
        auto middle = hat.graded_piece(Degree{static_cast<std::int64_t>(n) * p * m});
        CHECK(sums.subset_of(middle));
        CHECK(middle.subset_of(S.graded_piece(Degree{static_cast<std::int64_t>(n) * p * m})));
      }
    }
  }
}

TEST_CASE("property: approximation theorem on the suite") {
  std::vector<GradedSemigroup> suite{singly(1, {LatticePoint{0, 1}, LatticePoint{2, 1}}),
                                     singly(1, {LatticePoint{0, 2}, LatticePoint{3, 2}}),
                                     singly(2, {LatticePoint{0, 0, 1}, LatticePoint{2, 1, 2}, LatticePoint{1, 3, 3}}),
                                     singly(1, {LatticePoint{0, 2}, LatticePoint{1, 3}})};
  for (const auto& S : suite) {
    auto inv = invariants(S);
    auto dim = okounkov_body(S).body.affine_dim();
    const auto m = inv.m.get_si();
    // The threshold is one past the last mismatch in a window; it must leave a stable tail.
    const std::int64_t window = 20;
    std::int64_t threshold = 1;
    for (std::int64_t p = 1; p <= window; ++p) {
      const bool empty = S.graded_piece(Degree{p * m}).empty();
      if (empty) {
        threshold = p + 1;
        continue;
      }
      auto hat = truncate(S, Degree{p * m});
      if (!(invariants(hat).ind == inv.ind) || okounkov_body(hat).body.affine_dim() != dim) threshold = p + 1;
    }
    CHECK(threshold <= window - 5);
  }
}

TEST_CASE("property: monotone counts") {
  auto S = singly(2, {LatticePoint{0, 0, 1}, LatticePoint{2, 1, 2}, LatticePoint{1, 3, 3}, LatticePoint{1, 0, 1}});
  auto counts = S.counts_along(Degree{1}, 40);
  for (std::size_t k = 1; k < counts.size(); ++k) CHECK(counts[k] >= counts[k - 1]);
}

TEST_CASE("restriction to a degree ray") {
  auto segre = GradedSemigroup::from_generators(
      4, 2, {LatticePoint{1, 0, 0, 0, 1, 0}, LatticePoint{0, 1, 0, 0, 1, 0}, LatticePoint{0, 0, 1, 0, 0, 1}, LatticePoint{0, 0, 0, 1, 0, 1}});
  auto diag = GradedSemigroup::restriction(segre, Degree{1, 1});
  auto counts = diag.counts_along(Degree{1}, 6);
  for (std::int64_t k = 0; k <= 6; ++k) CHECK(counts[static_cast<std::size_t>(k)] == static_cast<std::uint64_t>((k + 1) * (k + 1)));
  CHECK(diag.piece_size(Degree{3}) == 16);
}

TEST_CASE("memory guard" * doctest::skip(memory_limit_bytes() > 8u * 1024 * 1024)) {
  // Runs only under a tiny OKLAB_MEMORY_LIMIT_MB (see the ctest registration).
  auto S = singly(3, {LatticePoint{0, 0, 0, 1}, LatticePoint{1, 0, 0, 1}, LatticePoint{0, 1, 0, 1}, LatticePoint{0, 0, 1, 1}});
  try {
    S.counts_along(Degree{1}, 2000);
    FAIL("expected a resource-limit error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceLimit);
    CHECK(std::string(e.what()).find("degree") != std::string::npos);
  }
}
