#include <doctest.h>

#include "oklab/algebra.hpp"
#include "oklab/error.hpp"
#include "oklab/presets.hpp"

#include <cmath>
#include <random>

using namespace oklab;

namespace {

Rational q(long num, long den = 1) { return make_rational(num, den); }

RationalVector at(std::initializer_list<Rational> x) { return RationalVector(x); }

// Oracle for the segre preset: [A]_n = { x1^a x2^b : a <= n1, b <= n2 }.
std::uint64_t segre_count(std::int64_t n1, std::int64_t n2) { return static_cast<std::uint64_t>((n1 + 1) * (n2 + 1)); }

}  // namespace

TEST_CASE("presets") {
  CHECK(preset_names().size() == 5);
  for (const auto& name : preset_names()) CHECK_NOTHROW(preset_algebra(name));
  try {
    preset("nope");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
    CHECK(std::string(e.what()).find("segre") != std::string::npos);
  }
}

TEST_CASE("hilbert function and dimensions") {
  auto segre = preset_algebra("segre");
  for (std::int64_t a = 0; a <= 6; ++a) {
    for (std::int64_t b = 0; b <= 6; ++b) CHECK(hilbert_function(segre, Degree{a, b}) == segre_count(a, b));
  }
  CHECK(krull_dim(segre) == 4);
  CHECK(dim_subalgebra(segre, {0}) == 2);
  CHECK(dim_subalgebra(segre, {1}) == 2);
  CHECK(dim_subalgebra(segre, {0, 1}) == 4);
  CHECK(segre.kind() == AlgebraKind::FinitelyGenerated);

  auto min = preset_algebra("min");
  CHECK(min.kind() == AlgebraKind::RuleDefined);
  CHECK(hilbert_function(min, Degree{2, 3}) == 3);
  CHECK(krull_dim(min) == 3);
  CHECK_FALSE(min.volume_ops_enabled() == false);

  // Veronese along (3, 4) of nonpoly: dim = 4k + 1.
  auto nonpoly = preset_algebra("nonpoly");
  auto ver = veronese(nonpoly, Degree{3, 4});
  for (std::int64_t k = 0; k <= 20; ++k) CHECK(hilbert_function(ver, Degree{k}) == static_cast<std::uint64_t>(4 * k + 1));
}

TEST_CASE("volume function by fibers") {
  auto min = preset_algebra("min");
  CHECK(volume_fn_fiber(min, at({2, 3})).value == 2);
  CHECK(volume_fn_fiber(min, at({1, 1})).value == 1);
  CHECK(volume_fn_fiber(min, at({1, 0})).value == 0);
  CHECK_FALSE(volume_fn_fiber(min, at({2, 3})).estimate);

  auto segre = preset_algebra("segre");
  // F(x) = x1 x2 for the product of two lines.
  CHECK(volume_fn_fiber(segre, at({2, 3})).value == 6);
  CHECK(volume_fn_fiber(segre, at({q(1, 2), 5})).value == q(5, 2));

  auto concave = preset_algebra("concave-pl");
  CHECK(volume_fn_fiber(concave, at({1, 2})).value == 2);
  CHECK(volume_fn_fiber(concave, at({3, 1})).value == 2);

  // Non-polyhedral cone: counting fallback flagged as an estimate.
  auto nonpoly = preset_algebra("nonpoly");
  auto est = volume_fn_fiber(nonpoly, at({1, 1}), 200);
  CHECK(est.estimate);
  CHECK(est.approx == doctest::Approx(4 - 2 * std::sqrt(2.0)).epsilon(0.02));
}

TEST_CASE("volume function by counting") {
  auto nonpoly = preset_algebra("nonpoly");
  CHECK(volume_fn_count(nonpoly, Degree{3, 4}, 200) == doctest::Approx(4).epsilon(0.0125));
  CHECK(volume_fn_count(nonpoly, Degree{1, 1}, 200) == doctest::Approx(4 - 2 * std::sqrt(2.0)).epsilon(0.02));
  auto min = preset_algebra("min");
  CHECK(volume_fn_count(min, Degree{2, 3}, 200) == doctest::Approx(2).epsilon(0.01));
}

TEST_CASE("property: counting agrees with fibers") {
  std::vector<std::pair<MonomialAlgebra, Degree>> cases{
      {preset_algebra("segre"), Degree{1, 2}},
      {preset_algebra("segre"), Degree{3, 1}},
      {MonomialAlgebra::from_generators(1, 1, {LatticePoint{0, 1}, LatticePoint{3, 2}}), Degree{1}},
      {MonomialAlgebra::from_generators(2, 2, {LatticePoint{0, 0, 1, 0}, LatticePoint{1, 1, 1, 0}, LatticePoint{0, 0, 0, 1},
                                               LatticePoint{2, 0, 0, 1}}),
       Degree{2, 1}},
  };
  for (const auto& [A, n] : cases) {
    RationalVector x(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) x[i] = n[i];
    const double fiber = volume_fn_fiber(A, x).value.get_d();
    // The multigraded piece DP fills a whole degree box, so s = 2 uses a shorter ray.
    const double count = volume_fn_count(A, n, n.size() == 1 ? 500 : 40);
    CHECK(std::abs(count - fiber) / std::max(fiber, 1e-9) <= 0.05);
  }
}

TEST_CASE("fiber theorem") {
  auto min = preset_algebra("min");
  for (const auto& n : {Degree{1, 1}, Degree{2, 3}, Degree{3, 1}}) {
    auto check = fiber_theorem_check(min, n);
    CHECK(check.equal);
    CHECK(check.fiber == check.veronese_body);
  }
  auto segre = preset_algebra("segre");
  CHECK(fiber_theorem_check(segre, Degree{2, 1}).equal);
}

TEST_CASE("property: homogeneity of the fiber volume") {
  std::vector<MonomialAlgebra> algebras{preset_algebra("min"), preset_algebra("segre"), preset_algebra("concave-pl")};
  for (const auto& A : algebras) {
    const auto base = at({2, 3});
    const auto v = volume_fn_fiber(A, base).value;
    const auto qdim = volume_fn_fiber(A, base).q;
    for (const auto& lambda : {q(1, 2), q(2), q(3)}) {
      Rational scale = 1;
      for (std::size_t k = 0; k < qdim; ++k) scale *= lambda;
      CHECK(volume_fn_fiber(A, lambda * base).value == scale * v);
    }
  }
}

TEST_CASE("property: log-concavity on polyhedral examples") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(1, 12);
  for (const auto& name : {"min", "segre", "concave-pl"}) {
    auto A = preset_algebra(name);
    for (int trial = 0; trial < 15; ++trial) {
      auto x = at({q(num(rng), 3), q(num(rng), 4)});
      auto y = at({q(num(rng), 2), q(num(rng), 5)});
      const auto fx = volume_fn_fiber(A, x);
      const double qd = static_cast<double>(fx.q);
      const double lhs = std::pow(volume_fn_fiber(A, x + y).value.get_d(), 1 / qd);
      const double rhs = std::pow(fx.value.get_d(), 1 / qd) + std::pow(volume_fn_fiber(A, y).value.get_d(), 1 / qd);
      CHECK(lhs >= rhs - 1e-9);
    }
  }
}

TEST_CASE("index uniformity across Veronese subalgebras") {
  auto A = MonomialAlgebra::from_generators(1, 1, {LatticePoint{0, 2}, LatticePoint{1, 3}});
  for (const auto& sample : index_uniformity(A, {Degree{1}, Degree{2}, Degree{3}, Degree{6}})) {
    CHECK(sample.veronese_ind == sample.global_ind);
  }
}

TEST_CASE("decomposability") {
  CHECK(is_decomposable(preset_algebra("segre")).decomposable);
  auto min = is_decomposable(preset_algebra("min"));
  CHECK_FALSE(min.decomposable);
  REQUIRE(min.witness);
  CHECK(*min.witness == Degree{1, 1});
  CHECK(is_decomposable(preset_algebra("golden")).decomposable);
}

TEST_CASE("truncations and p-subalgebras") {
  auto segre = preset_algebra("segre");
  auto p2 = p_subalgebra(segre, 2);
  for (std::int64_t a = 0; a <= 3; ++a) {
    for (std::int64_t b = 0; b <= 3; ++b) {
      CHECK(hilbert_function(p2, Degree{a, b}) == static_cast<std::uint64_t>((2 * a + 1) * (2 * b + 1)));
    }
  }
  auto line = MonomialAlgebra::from_generators(1, 1, {LatticePoint{0, 1}, LatticePoint{1, 1}});
  auto p3 = p_subalgebra(line, 3);
  for (std::int64_t n = 0; n <= 5; ++n) CHECK(hilbert_function(p3, Degree{n}) == static_cast<std::uint64_t>(3 * n + 1));

  auto golden = preset_algebra("golden");
  for (std::int64_t a = 1; a <= 4; ++a) {
    auto small = truncation(golden, a);
    auto big = truncation(golden, a + 1);
    for (std::int64_t n = 0; n <= 8; ++n) {
      auto lo = small.semigroup().graded_piece(Degree{n}).points();
      auto hi = big.semigroup().graded_piece(Degree{n}).points();
      CHECK(std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()));
    }
  }
}

TEST_CASE("hilbert polynomials") {
  auto segre = hilbert_polynomial(preset_algebra("segre"));
  // (n1 + 1)(n2 + 1)
  Polynomial expected(2, {{{1, 1}, q(1)}, {{1, 0}, q(1)}, {{0, 1}, q(1)}, {{0, 0}, q(1)}});
  CHECK(segre.full == expected);
  CHECK(segre.q == 2);
  CHECK(segre.leading.mixed_value({1, 1}) == 1);
  CHECK(segre.leading.mixed_value({2, 0}) == 0);
  CHECK(segre.leading.mixed_value({0, 2}) == 0);
  CHECK(segre.held_out_checked >= 3);

  auto line = hilbert_polynomial(MonomialAlgebra::from_generators(2, 1, {LatticePoint{1, 0, 1}, LatticePoint{0, 1, 1}}));
  CHECK(line.full == Polynomial(1, {{{1}, q(1)}, {{0}, q(1)}}));
  CHECK(line.leading.mixed_value({1}) == 1);

  auto point = hilbert_polynomial(MonomialAlgebra::from_generators(0, 2, {LatticePoint{1, 0}, LatticePoint{0, 1}}));
  CHECK(point.q == 0);
  CHECK(point.full == Polynomial(2, {{{0, 0}, q(1)}}));
  CHECK(point.leading.mixed_value({0, 0}) == 1);

  CHECK_THROWS_AS(hilbert_polynomial(preset_algebra("min")), Error);
}

TEST_CASE("mixed multiplicities") {
  auto segre = preset_algebra("segre");
  auto e11 = mixed_multiplicities(segre, {1, 1}, {1, 2, 4, 8});
  CHECK(e11.provenance == Provenance::Exact);
  REQUIRE(e11.exact);
  CHECK(*e11.exact == 1);
  for (const auto& step : e11.ladder) CHECK(step.value == 1);
  CHECK(e11.positive);
  auto e20 = mixed_multiplicities(segre, {2, 0}, {1, 2, 4});
  CHECK(*e20.exact == 0);
  CHECK_FALSE(e20.positive);

  auto golden = mixed_multiplicities(preset_algebra("golden"), {1}, {1, 5, 11, 55, 110});
  for (const auto& step : golden.ladder) CHECK(step.value == q(89 * step.p / 55, step.p));
  CHECK(golden.ladder[3].value == q(89, 55));
  CHECK(golden.exact);

  try {
    mixed_multiplicities(preset_algebra("min"), {1, 0});
    FAIL("expected a refusal");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(1,1)") != std::string::npos);
  }
}

TEST_CASE("property: ladder monotone along divisibility") {
  auto golden = mixed_multiplicities(preset_algebra("golden"), {1}, {1, 2, 5, 10, 55, 110});
  // Pairs (p, k p) in the schedule.
  const std::vector<std::pair<std::size_t, std::size_t>> chains{{0, 1}, {1, 3}, {2, 3}, {2, 4}, {4, 5}, {0, 4}};
  for (auto [a, b] : chains) CHECK(golden.ladder[a].value <= golden.ladder[b].value);
  Rational sup = 0;
  for (const auto& step : golden.ladder) sup = std::max(sup, step.value);
  CHECK(sup == q(89, 55));
  CHECK(golden.ladder[4].value == sup);
}

TEST_CASE("positivity") {
  auto segre = preset_algebra("segre");
  auto pos = positivity(segre, {1, 1});
  CHECK(pos.positive);
  CHECK(pos.checks.size() == 3);
  auto neg = positivity(segre, {2, 0});
  CHECK_FALSE(neg.positive);
  REQUIRE(neg.violated);
  CHECK(*neg.violated == std::vector<std::size_t>{1});

  // Positivity matches the sign of a stabilized mixed multiplicity.
  for (const auto& d : {Exponent{1, 1}, Exponent{2, 0}, Exponent{0, 2}}) {
    auto report = mixed_multiplicities(segre, d, {1, 2, 4});
    REQUIRE(report.exact);
    CHECK(positivity(segre, d).positive == (*report.exact > 0));
  }
}

TEST_CASE("volume operations need nonvanishing axes") {
  auto A = MonomialAlgebra::from_generators(1, 2, {LatticePoint{0, 1, 0}, LatticePoint{0, 1, 1}});
  CHECK_FALSE(A.volume_ops_enabled());
  CHECK_THROWS_AS(volume_fn_fiber(A, at({1, 1})), Error);
}
