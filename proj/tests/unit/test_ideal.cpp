#include <doctest.h>

#include "oklab/error.hpp"
#include "oklab/ideal_family.hpp"
#include "oklab/io.hpp"

#include <chrono>
#include <random>
#include <set>

using namespace oklab;

namespace {

Rational q(long num, long den = 1) { return make_rational(num, den); }

MonomialIdeal ideal(std::size_t vars, std::vector<Exponent> gens) { return MonomialIdeal(vars, std::move(gens)); }

MonomialIdeal m_power(std::size_t vars, unsigned n) { return MonomialIdeal::maximal_power(vars, n); }

Polytope hull(std::vector<RationalVector> pts) { return convex_hull(pts); }

Polytope segment(std::size_t dim, std::size_t axis) {
  RationalVector e(dim);
  e[axis] = 1;
  return hull({RationalVector(dim), e});
}

Polytope unit_square() { return hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }
Polytope triangle() { return hull({{0, 0}, {1, 0}, {0, 1}}); }

// Oracle: monomials of bounded degree, tested for membership one by one.
Integer brute_quotient(const MonomialIdeal& num, const MonomialIdeal& den, unsigned max_degree) {
  Integer count = 0;
  for (unsigned t = 0; t <= max_degree; ++t) {
    for (const auto& e : exponents_of_degree(num.num_vars(), t)) {
      if (num.contains(e) && !den.contains(e)) ++count;
    }
  }
  return count;
}

MonomialIdeal random_equigenerated(std::mt19937_64& rng, std::size_t vars, unsigned degree) {
  auto all = exponents_of_degree(vars, degree);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  std::vector<Exponent> gens;
  const auto k = 1 + pick(rng) % 3;
  for (std::size_t i = 0; i < k; ++i) gens.push_back(all[pick(rng)]);
  return ideal(vars, gens);
}

}  // namespace

TEST_CASE("products and powers") {
  CHECK(product(ideal(2, {{1, 0}}), ideal(2, {{0, 1}})) == ideal(2, {{1, 1}}));
  CHECK(power(m_power(2, 1), 2) == ideal(2, {{2, 0}, {1, 1}, {0, 2}}));
  CHECK(product(ideal(2, {{2, 0}, {1, 1}}), ideal(2, {{0, 1}})).min_gens() == std::vector<Exponent>{{1, 2}, {2, 1}});
  // Minimalization drops multiples.
  CHECK(ideal(2, {{1, 0}, {2, 3}, {1, 1}}).min_gens() == std::vector<Exponent>{{1, 0}});
  CHECK(ideal(2, {{1, 2}, {2, 1}}).homogeneous_degree() == 3u);
  CHECK_FALSE(ideal(2, {{1, 0}, {0, 2}}).homogeneous_degree());
  CHECK_THROWS_AS(ideal(2, {{1, 0, 0}}), Error);
}

TEST_CASE("quotient dimensions") {
  auto R = MonomialIdeal::unit(2);
  for (unsigned b = 1; b <= 6; ++b) {
    CHECK(quotient_dim(R, m_power(2, b)).count == b * (b + 1) / 2);
    auto xa = ideal(2, {{3, 0}});
    CHECK(quotient_dim(xa, product(m_power(2, b), xa)).count == b * (b + 1) / 2);
  }
  for (unsigned n0 = 1; n0 <= 4; ++n0) {
    for (unsigned n1 = 0; n1 <= 4; ++n1) {
      const unsigned t = n0 + n1;
      CHECK(quotient_dim(m_power(2, n1), m_power(2, t)).count == (t * (t + 1) - n1 * (n1 + 1)) / 2);
    }
  }
  // Not contained, and not cofinal.
  CHECK_THROWS_AS(quotient_dim(ideal(2, {{1, 0}}), ideal(2, {{0, 1}})), Error);
  CHECK_THROWS_AS(quotient_dim(R, ideal(2, {{1, 0}})), Error);
  try {
    quotient_dim(R, m_power(2, 10), 5);
    FAIL("expected a cap error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceLimit);
  }
}

TEST_CASE("property: quotient_dim matches brute force") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t vars = 2 + static_cast<std::size_t>(trial % 2);
    auto num = random_equigenerated(rng, vars, 1 + static_cast<unsigned>(trial % 3));
    const unsigned c = 1 + static_cast<unsigned>(trial % 4);
    auto den = product(num, m_power(vars, c));
    den = ideal(vars, [&] {
      auto g = den.min_gens();
      auto extra = random_equigenerated(rng, vars, num.max_generator_degree() + 1).min_gens();
      // Only keep extra generators that stay inside num.
      for (auto& e : extra) {
        if (num.contains(e)) g.push_back(e);
      }
      return g;
    }());
    const auto fast = quotient_dim(num, den);
    CHECK(fast.count == brute_quotient(num, den, num.max_generator_degree() + c + 2));
  }
}

TEST_CASE("property: shift invariance") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto num = random_equigenerated(rng, 3, 2);
    auto den = product(num, m_power(3, 2));
    auto shift = ideal(3, {{static_cast<unsigned>(trial % 3), 1, static_cast<unsigned>(trial % 2)}});
    CHECK(quotient_dim(product(shift, num), product(den, shift)).count == quotient_dim(num, den).count);
  }
}

TEST_CASE("analytic spread") {
  CHECK(analytic_spread(m_power(2, 1)) == 2);
  CHECK(analytic_spread(ideal(2, {{2, 0}, {1, 1}, {0, 2}})) == 2);
  CHECK(analytic_spread(ideal(2, {{2, 0}})) == 1);
  CHECK(analytic_spread(m_power(3, 2)) == 3);
  CHECK_THROWS_AS(analytic_spread(ideal(2, {{1, 0}, {0, 2}})), Error);
}

TEST_CASE("families from bodies") {
  auto point = body_to_family(hull({{0, 0}}), 1);
  for (std::int64_t n = 1; n <= 4; ++n) CHECK(point.member(n) == ideal(3, {{0, 0, static_cast<unsigned>(n)}}));

  auto seg = body_to_family(segment(2, 0), 1);
  for (unsigned n = 1; n <= 4; ++n) {
    std::vector<Exponent> gens;
    for (unsigned j = 0; j <= n; ++j) gens.push_back({j, 0, n - j});
    CHECK(seg.member(n) == ideal(3, gens));
  }

  auto square = body_to_family(unit_square(), 2);
  CHECK(square.member(1).min_gens().size() == 4);
  // Lattice points of 2 x square: (0..2)^2.
  CHECK(square.member(2).min_gens().size() == 9);
  CHECK(*square.member(2).homogeneous_degree() == 4);

  CHECK_THROWS_AS(body_to_family(unit_square(), 1), Error);
  CHECK(minimal_homogenization(unit_square()) == 2);
  CHECK(minimal_homogenization(hull({{q(1, 2), q(1, 3)}})) == 1);
}

TEST_CASE("property: family closure and growth") {
  std::vector<GradedIdealFamily> families{
      GradedIdealFamily::m_adic(2),
      GradedIdealFamily::powers(ideal(2, {{2, 0}, {0, 3}})),
      body_to_family(unit_square(), 2),
      body_to_family(triangle(), 1),
      body_to_family(hull({{q(1, 2), 0}, {0, q(3, 2)}, {1, 1}}), 2),
  };
  for (const auto& family : families) {
    auto check = check_family(family, 6);
    CHECK(check.closed);
    CHECK(check.growth_ok);
  }
  // FromBody members are generated exactly in degree n h.
  auto fb = body_to_family(unit_square(), 3);
  for (std::int64_t n = 1; n <= 4; ++n) CHECK(*fb.member(n).homogeneous_degree() == 3 * n);

  // J_1 = (x), J_2 = (x^3) breaks J_1 J_1 in J_2.
  CHECK_THROWS_AS(GradedIdealFamily::explicit_members(2, {ideal(2, {{1, 0}}), ideal(2, {{3, 0}})}), Error);
  auto ok = GradedIdealFamily::explicit_members(2, {ideal(2, {{1, 0}}), ideal(2, {{2, 0}, {0, 5}})});
  CHECK(check_family(ok, 2).closed);
  CHECK_THROWS_AS(ok.member(3), Error);
}

TEST_CASE("property: fast and general counting routes agree") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t vars = 2 + static_cast<std::size_t>(trial % 2);
    const unsigned c = 1 + static_cast<unsigned>(trial % 2);
    std::vector<MonomialIdeal> J{random_equigenerated(rng, vars, 1 + static_cast<unsigned>(trial % 3))};
    if (trial % 3 == 0) J.push_back(random_equigenerated(rng, vars, 2));
    const std::int64_t n0 = 1 + trial % 3;
    Degree n(J.size());
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = (trial + static_cast<int>(i)) % 3;
    const auto I = m_power(vars, c);
    CHECK(fixed_quotient_dim(I, J, n0, n, CountRoute::Auto) == fixed_quotient_dim(I, J, n0, n, CountRoute::General));
  }
}

TEST_CASE("Bhattacharya limits") {
  auto m = GradedIdealFamily::m_adic(2);
  auto x = GradedIdealFamily::powers(ideal(2, {{1, 0}}));
  CHECK(bhattacharya_limit(m, {m}, 1, {1}, 200) == doctest::Approx(1.5).epsilon(0.01));
  CHECK(bhattacharya_limit(m, {x}, 1, {1}, 200) == doctest::Approx(0.5).epsilon(0.01));
  // Homogeneity of degree d = 2.
  CHECK(bhattacharya_limit(m, {m}, 2, {2}, 100) == doctest::Approx(6).epsilon(0.01));
}

TEST_CASE("Bhattacharya polynomials of fixed ideals") {
  auto m = m_power(2, 1);
  auto g = bhattacharya_polynomial(m, {m});
  // n0^2 / 2 + n0 n1
  CHECK(g.leading == Polynomial(2, {{{2, 0}, q(1, 2)}, {{1, 1}, q(1)}}));
  CHECK(fixed_mixed_multiplicity(g, 1, {0}) == 1);
  CHECK(fixed_mixed_multiplicity(g, 0, {1}) == 1);
  auto gx = bhattacharya_polynomial(m, {ideal(2, {{1, 0}})});
  CHECK(gx.leading == Polynomial(2, {{{2, 0}, q(1, 2)}}));
  // General route (I not a power of m) gives the same leading form for m-primary I.
  auto gi = bhattacharya_polynomial(ideal(2, {{2, 0}, {0, 2}}), {m});
  CHECK(fixed_mixed_multiplicity(gi, 1, {0}) == 4);
  CHECK(fixed_mixed_multiplicity(gi, 0, {1}) == 2);
}

TEST_CASE("family mixed multiplicities") {
  auto m = GradedIdealFamily::m_adic(2);
  auto x = GradedIdealFamily::powers(ideal(2, {{1, 0}}));
  auto e10 = family_mixed_multiplicities(m, {m}, 1, {0}, {1, 2, 4});
  auto e01 = family_mixed_multiplicities(m, {m}, 0, {1}, {1, 2, 4});
  REQUIRE(e10.exact);
  REQUIRE(e01.exact);
  CHECK(*e10.exact == 1);
  CHECK(*e01.exact == 1);
  CHECK(*family_mixed_multiplicities(m, {x}, 1, {0}, {1, 2}).exact == 1);
  CHECK(*family_mixed_multiplicities(m, {x}, 0, {1}, {1, 2}).exact == 0);

  // Powers families keep the ladder constant.
  auto i2 = GradedIdealFamily::powers(ideal(2, {{2, 0}, {0, 2}}));
  auto report = family_mixed_multiplicities(m, {i2}, 0, {1}, {1, 2, 4});
  for (const auto& step : report.ladder) CHECK(step.value == report.ladder.front().value);

  CHECK_THROWS_AS(family_mixed_multiplicities(m, {m}, 1, {1}), Error);
}

TEST_CASE("family positivity") {
  auto e1 = body_to_family(segment(2, 0), 1);
  auto e2 = body_to_family(segment(2, 1), 1);
  auto pos = family_positivity({e1, e2}, 0, {1, 1});
  CHECK(pos.positive);
  auto neg = family_positivity({e1, e1}, 0, {1, 1});
  CHECK_FALSE(neg.positive);
  REQUIRE(neg.violated);
  CHECK(*neg.violated == std::vector<std::size_t>{1, 2});
  CHECK(family_positivity({e1, e1}, 2, {0, 0}).positive);
  CHECK_THROWS_AS(family_positivity({GradedIdealFamily::powers(ideal(3, {{1, 0, 0}, {0, 0, 2}}))}, 1, {1}), Error);
}

TEST_CASE("mixed volumes through ideals") {
  struct Case {
    std::vector<Polytope> bodies;
    Rational geometric;
    bool positive;
  };
  std::vector<Case> cases{
      {{segment(2, 0), segment(2, 1)}, 1, true},
      {{segment(2, 0), segment(2, 0)}, 0, false},
      {{unit_square(), triangle()}, 2, true},
  };
  for (const auto& c : cases) {
    auto bridge = mixed_volume_via_ideals(c.bodies, {1, 1});
    CHECK(bridge.geometric_side == c.geometric);
    CHECK(bridge.rel_diff <= 0.05);
    CHECK(bridge.geometric_positive == c.positive);
    CHECK(bridge.ideal_positivity.positive == c.positive);
  }
}

TEST_CASE("json round trips") {
  for (const auto& p : {unit_square(), triangle(), hull({{q(1, 2), q(-3, 4)}, {2, 1}})}) {
    auto text = document("polytope", polytope_to_json(p)).dump();
    CHECK(polytope_from_json(unwrap(Json::parse(text), "polytope")) == p);
  }
  auto I = ideal(3, {{1, 2, 0}, {0, 0, 4}});
  CHECK(ideal_from_json(ideal_to_json(I)) == I);
  for (const auto& family : {GradedIdealFamily::m_adic(2), body_to_family(unit_square(), 2)}) {
    auto again = family_from_json(family_to_json(family));
    CHECK(family_to_json(again) == family_to_json(family));
    CHECK(again.member(2) == family.member(2));
  }
  CHECK_THROWS_AS(unwrap(Json::parse(R"({"schema_version": 2, "ideal": {}})"), "ideal"), Error);
}
