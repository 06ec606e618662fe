#include "oklab/algebra.hpp"

#include "oklab/error.hpp"
#include "oklab/fit.hpp"

#include <cmath>

namespace oklab {

namespace {

Degree unit(std::size_t s, std::size_t i, std::int64_t scale = 1) {
  Degree e(s, 0);
  e[i] = scale;
  return e;
}

LatticePoint join(const IntPoint& valuation, const Degree& degree) {
  IntPoint full = valuation;
  full.insert(full.end(), degree.begin(), degree.end());
  return LatticePoint::from_int64(full);
}

std::vector<LatticePoint> proxies(const MonomialAlgebra& A) {
  return A.semigroup().proxy_generators(A.generation_bound());
}

bool is_staircase(const MonomialAlgebra& A) { return A.semigroup().source() == SemigroupSource::Staircase; }

// Degree-0 part of a lattice in Z^(r+s), as a lattice in Z^r.
Sublattice degree_zero_part(const Sublattice& lattice, std::size_t r, std::size_t s) {
  Sublattice cut = lattice;
  for (std::size_t j = 0; j < s; ++j) {
    LatticePoint f(r + s);
    f[r + j] = 1;
    cut = intersect_hyperplane(cut, f);
  }
  std::vector<LatticePoint> pts;
  for (const auto& b : cut.basis().rows()) {
    LatticePoint v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = b[i];
    pts.push_back(std::move(v));
  }
  return group_generated(pts, r);
}

struct GlobalIndex {
  Sublattice reference;
  SubgroupIndex ind;
};

GlobalIndex global_index(const MonomialAlgebra& A) {
  auto group = group_generated(proxies(A), A.r() + A.s());
  auto reference = degree_zero_part(saturation(group), A.r(), A.s());
  auto ind = subgroup_index(degree_zero_part(group, A.r(), A.s()), reference);
  return GlobalIndex{std::move(reference), ind};
}

// (y | x) with lower forms <= y <= upper forms and x >= 0.
PolyCone staircase_cone(const StaircaseSpec& spec) {
  const std::size_t dim = 1 + spec.s;
  ConeHRep h;
  for (std::size_t j = 0; j < spec.s; ++j) {
    LatticePoint e(dim);
    e[1 + j] = 1;
    h.inequalities.push_back(std::move(e));
  }
  auto add = [&](const LinearForm& f, long sign) {
    LatticePoint a(dim);
    a[0] = sign * f.denominator;
    for (std::size_t j = 0; j < spec.s; ++j) a[1 + j] = -sign * f.coeffs[j];
    h.inequalities.push_back(std::move(a));
  };
  for (const auto& f : spec.lower_forms()) add(f, 1);
  for (const auto& f : spec.upper_forms()) add(f, -1);
  return PolyCone::from_hrep(dim, std::move(h));
}

void check_degree_vector(const Degree& n, std::size_t s, const char* op) {
  if (n.size() != s) fail(ErrorKind::DimensionMismatch, op, "degree " + to_string(n) + " needs " + std::to_string(s) + " entries");
  for (auto v : n) {
    if (v < 0) fail(ErrorKind::Validation, op, "degree " + to_string(n) + " has a negative entry");
  }
  if (std::all_of(n.begin(), n.end(), [](std::int64_t v) { return v == 0; })) {
    fail(ErrorKind::Validation, op, "degree " + to_string(n) + " must be nonzero");
  }
}

void require_volume_ops(const MonomialAlgebra& A, const char* op) {
  if (A.volume_ops_enabled()) return;
  for (std::size_t i = 0; i < A.s(); ++i) {
    if (!A.axis_nonvanishing()[i]) {
      fail(ErrorKind::Validation, op, "the piece at e_" + std::to_string(i + 1) + " is zero");
    }
  }
}

std::size_t volume_exponent(const MonomialAlgebra& A, const char* op) {
  const auto dim = krull_dim(A);
  if (dim < A.s()) fail(ErrorKind::Validation, op, "Krull dimension is smaller than the number of degrees");
  return dim - A.s();
}

}  // namespace

MonomialAlgebra::MonomialAlgebra(GradedSemigroup semigroup, unsigned generation_bound)
    : semigroup_(std::move(semigroup)), generation_bound_(generation_bound) {
  for (std::size_t i = 0; i < s(); ++i) axis_nonvanishing_.push_back(!semigroup_.graded_piece(unit(s(), i)).empty());
}

MonomialAlgebra MonomialAlgebra::from_generators(std::size_t r, std::size_t s, std::vector<LatticePoint> generators) {
  return MonomialAlgebra(GradedSemigroup::from_generators(r, s, std::move(generators)));
}

MonomialAlgebra MonomialAlgebra::from_staircase(StaircaseSpec spec) {
  return MonomialAlgebra(GradedSemigroup::from_staircase(std::move(spec)));
}

AlgebraKind MonomialAlgebra::kind() const noexcept {
  return semigroup_.is_finitely_generated() ? AlgebraKind::FinitelyGenerated : AlgebraKind::RuleDefined;
}

bool MonomialAlgebra::volume_ops_enabled() const {
  return std::all_of(axis_nonvanishing_.begin(), axis_nonvanishing_.end(), [](bool b) { return b; });
}

std::uint64_t hilbert_function(const MonomialAlgebra& A, const Degree& n) { return A.semigroup().piece_size(n); }

MonomialAlgebra veronese(const MonomialAlgebra& A, const Degree& n) {
  check_degree_vector(n, A.s(), "veronese");
  return MonomialAlgebra(GradedSemigroup::restriction(A.semigroup(), n), A.generation_bound());
}

GlobalCone global_no_cone(const MonomialAlgebra& A) {
  if (is_staircase(A) && A.semigroup().staircase().is_piecewise_linear()) {
    return GlobalCone{staircase_cone(A.semigroup().staircase()), false};
  }
  return GlobalCone{PolyCone(A.r() + A.s(), proxies(A)), A.kind() == AlgebraKind::RuleDefined};
}

std::size_t krull_dim(const MonomialAlgebra& A) { return group_generated(proxies(A), A.r() + A.s()).rank(); }

std::size_t dim_subalgebra(const MonomialAlgebra& A, const std::vector<std::size_t>& axes) {
  const std::size_t r = A.r();
  std::vector<bool> allowed(A.s(), false);
  for (auto j : axes) {
    if (j >= A.s()) fail(ErrorKind::Validation, "dim_subalgebra", "axis " + std::to_string(j + 1) + " out of range");
    allowed[j] = true;
  }
  std::vector<LatticePoint> kept;
  for (const auto& g : proxies(A)) {
    bool ok = true;
    for (std::size_t j = 0; j < A.s(); ++j) ok = ok && (allowed[j] || g[r + j] == 0);
    if (ok) kept.push_back(g);
  }
  return group_generated(kept, r + A.s()).rank();
}

FiberVolume volume_fn_fiber(const MonomialAlgebra& A, const RationalVector& x, std::int64_t n_max) {
  constexpr const char* op = "volume_fn_fiber";
  if (x.ambient_dim() != A.s()) fail(ErrorKind::DimensionMismatch, op, to_string(x) + " does not have s entries");
  for (const auto& c : x.coords()) {
    if (c < 0) fail(ErrorKind::Validation, op, to_string(x) + " has a negative entry");
  }
  require_volume_ops(A, op);
  FiberVolume out;
  out.q = volume_exponent(A, op);

  if (is_staircase(A) && !A.semigroup().staircase().is_piecewise_linear()) {
    // No polyhedral cone to slice: report the counting limit at an integral multiple of x.
    Integer scale = 1;
    for (const auto& c : x.coords()) scale = lcm(scale, c.get_den());
    Degree n;
    for (const auto& c : x.coords()) n.push_back(to_int64(Integer(c * scale), op));
    out.estimate = true;
    out.approx = volume_fn_count(A, n, n_max) / std::pow(scale.get_d(), static_cast<double>(out.q));
    return out;
  }

  out.fiber = cone_fiber(global_no_cone(A).cone, A.r(), A.s(), x);
  auto index = global_index(A);
  out.ind = index.ind;
  if (out.fiber.empty() || out.fiber.affine_dim() < static_cast<int>(out.q)) {
    out.value = 0;
  } else {
    out.value = Rational(MonomialAlgebra::leaf_dim) * integral_volume(out.fiber, index.reference) / Rational(out.ind.value);
  }
  out.approx = to_double(out.value);
  return out;
}

double volume_fn_count(const MonomialAlgebra& A, const Degree& n, std::int64_t n_max) {
  constexpr const char* op = "volume_fn_count";
  check_degree_vector(n, A.s(), op);
  require_volume_ops(A, op);
  const auto q = volume_exponent(A, op);
  auto counts = A.semigroup().counts_along(n, n_max);
  std::vector<double> values(counts.begin(), counts.end());
  return fit_tail(values, static_cast<unsigned>(q)).leading;
}

FiberTheoremCheck fiber_theorem_check(const MonomialAlgebra& A, const Degree& n) {
  check_degree_vector(n, A.s(), "fiber_theorem_check");
  RationalVector x(A.s());
  for (std::size_t j = 0; j < A.s(); ++j) x[j] = n[j];
  FiberTheoremCheck out;
  out.fiber = cone_fiber(global_no_cone(A).cone, A.r(), A.s(), x);
  auto v = veronese(A, n);
  auto body = okounkov_body(v.semigroup(), v.generation_bound());
  out.veronese_body = scale(body.body, Rational(1) / Rational(body.height));
  out.equal = out.fiber == out.veronese_body;
  return out;
}

std::vector<IndexSample> index_uniformity(const MonomialAlgebra& A, const std::vector<Degree>& samples) {
  const auto global = global_index(A).ind;
  std::vector<IndexSample> out;
  for (const auto& n : samples) {
    auto v = veronese(A, n);
    out.push_back(IndexSample{n, invariants(v.semigroup(), v.generation_bound()).ind, global});
  }
  return out;
}

Decomposability is_decomposable(const MonomialAlgebra& A, unsigned bound) {
  const std::size_t s = A.s();
  if (s == 1) return {};
  for (const auto& n : degrees_in_box(Degree(s, static_cast<std::int64_t>(bound)))) {
    PointSet product = PointSet::from_points(A.r(), {IntPoint(A.r(), 0)});
    for (std::size_t i = 0; i < s && !product.empty(); ++i) {
      if (n[i] == 0) continue;
      product = product.sumset(A.semigroup().graded_piece(unit(s, i, n[i])));
    }
    if (!(product == A.semigroup().graded_piece(n))) return Decomposability{false, n};
  }
  return {};
}

MonomialAlgebra truncation(const MonomialAlgebra& A, std::int64_t a) {
  if (a < 1) fail(ErrorKind::Validation, "truncation", "truncation degree must be at least 1");
  std::vector<LatticePoint> gens;
  for (std::size_t i = 0; i < A.s(); ++i) {
    const auto before = gens.size();
    for (std::int64_t k = 1; k <= a; ++k) {
      const auto e = unit(A.s(), i, k);
      for (const auto& v : A.semigroup().graded_piece(e).points()) gens.push_back(join(v, e));
    }
    if (gens.size() == before) {
      fail(ErrorKind::EmptyTruncation, "truncation",
           "axis " + std::to_string(i + 1) + " has no monomials in degrees 1.." + std::to_string(a));
    }
  }
  return MonomialAlgebra::from_generators(A.r(), A.s(), std::move(gens));
}

MonomialAlgebra p_subalgebra(const MonomialAlgebra& A, std::int64_t p) {
  if (p < 1) fail(ErrorKind::Validation, "p_subalgebra", "p must be at least 1");
  std::vector<LatticePoint> gens;
  for (std::size_t i = 0; i < A.s(); ++i) {
    auto piece = A.semigroup().graded_piece(unit(A.s(), i, p));
    if (piece.empty()) {
      fail(ErrorKind::EmptyTruncation, "p_subalgebra",
           "axis " + std::to_string(i + 1) + " has no monomials in degree " + std::to_string(p));
    }
    for (const auto& v : piece.points()) gens.push_back(join(v, unit(A.s(), i)));
  }
  return MonomialAlgebra::from_generators(A.r(), A.s(), std::move(gens));
}

HilbertPolynomial hilbert_polynomial(const MonomialAlgebra& A, std::int64_t start_cap) {
  constexpr const char* op = "hilbert_polynomial";
  if (A.kind() != AlgebraKind::FinitelyGenerated) fail(ErrorKind::Validation, op, "needs a finitely generated algebra");
  const std::size_t r = A.r();
  for (const auto& g : A.semigroup().generators()) {
    Integer total = 0;
    for (std::size_t j = 0; j < A.s(); ++j) total += g[r + j];
    if (total != 1) fail(ErrorKind::Validation, op, "generator " + to_string(g) + " is not in a degree e_i");
  }
  HilbertPolynomial out;
  out.q = volume_exponent(A, op);
  auto fit = fit_eventual_polynomial(
      A.s(), static_cast<unsigned>(out.q), [&](const Degree& n) { return Integer(A.semigroup().piece_size(n)); }, op,
      start_cap);
  out.full = std::move(fit.polynomial);
  out.leading = MultidegreePolynomial::from_polynomial(out.full.homogeneous_part(static_cast<unsigned>(out.q)),
                                                       static_cast<unsigned>(out.q));
  out.start = fit.start;
  out.held_out_checked = fit.held_out_checked;
  return out;
}

std::vector<std::int64_t> default_p_schedule() { return {1, 2, 4, 8, 16}; }

MixedMultiplicityReport ladder_report(Exponent d, std::vector<LadderStep> ladder) {
  if (ladder.empty()) fail(ErrorKind::Validation, "ladder_report", "empty p schedule");
  MixedMultiplicityReport out;
  out.d = std::move(d);
  Rational sup = ladder.front().value;
  for (const auto& step : ladder) sup = std::max(sup, step.value);
  const auto n = ladder.size();
  if (n >= 2 && ladder[n - 1].value == ladder[n - 2].value) {
    out.provenance = Provenance::Exact;
    out.exact = ladder.back().value;
    out.value = to_double(*out.exact);
  } else if (n >= 2) {
    // Errors behave like C / p along the schedule.
    const double ratio = static_cast<double>(ladder[n - 1].p) / static_cast<double>(ladder[n - 2].p);
    const double extrapolated = (ratio * ladder[n - 1].value.get_d() - ladder[n - 2].value.get_d()) / (ratio - 1);
    out.value = std::max(extrapolated, to_double(sup));
  } else {
    out.value = to_double(sup);
  }
  out.positive = out.exact ? *out.exact > 0 : out.value > 0;
  out.ladder = std::move(ladder);
  return out;
}

MixedMultiplicityReport mixed_multiplicities(const MonomialAlgebra& A, const Exponent& d,
                                             const std::vector<std::int64_t>& p_schedule, unsigned decomposability_bound) {
  constexpr const char* op = "mixed_multiplicities";
  if (d.size() != A.s()) fail(ErrorKind::DimensionMismatch, op, "type vector needs " + std::to_string(A.s()) + " entries");
  const auto q = volume_exponent(A, op);
  if (total_degree(d) != q) {
    fail(ErrorKind::Validation, op, "type vector has |d| = " + std::to_string(total_degree(d)) + " but q = " + std::to_string(q));
  }
  auto dec = is_decomposable(A, decomposability_bound);
  if (!dec.decomposable) fail(ErrorKind::Validation, op, "grading is not decomposable at degree " + to_string(*dec.witness));

  std::vector<LadderStep> ladder;
  for (auto p : p_schedule) {
    auto hp = hilbert_polynomial(p_subalgebra(A, p));
    // A lower-dimensional A~_[p] has no degree-q part, and the coefficient reads 0.
    const Rational e = Rational(multi_factorial(d)) * hp.full.coefficient(d);
    Integer power = 1;
    for (std::size_t i = 0; i < q; ++i) power *= p;
    ladder.push_back(LadderStep{p, e / Rational(power)});
  }
  return ladder_report(d, std::move(ladder));
}

std::vector<std::vector<std::size_t>> nonempty_subsets(std::size_t s) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << s); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t j = 0; j < s; ++j) {
      if (mask & (std::size_t{1} << j)) subset.push_back(j);
    }
    out.push_back(std::move(subset));
  }
  return out;
}

PositivityResult positivity(const MonomialAlgebra& A, const Exponent& d, unsigned decomposability_bound) {
  constexpr const char* op = "positivity";
  if (d.size() != A.s()) fail(ErrorKind::DimensionMismatch, op, "type vector needs " + std::to_string(A.s()) + " entries");
  const auto q = volume_exponent(A, op);
  if (total_degree(d) != q) {
    fail(ErrorKind::Validation, op, "type vector has |d| = " + std::to_string(total_degree(d)) + " but q = " + std::to_string(q));
  }
  auto dec = is_decomposable(A, decomposability_bound);
  if (!dec.decomposable) fail(ErrorKind::Validation, op, "grading is not decomposable at degree " + to_string(*dec.witness));

  PositivityResult out;
  for (const auto& subset : nonempty_subsets(A.s())) {
    SubsetInequality check;
    for (auto j : subset) {
      check.axes.push_back(j + 1);
      check.lhs += d[j];
    }
    check.rhs = static_cast<std::int64_t>(dim_subalgebra(A, subset)) - static_cast<std::int64_t>(subset.size());
    if (check.lhs > check.rhs && out.positive) {
      out.positive = false;
      out.violated = check.axes;
    }
    out.checks.push_back(std::move(check));
  }
  return out;
}

}  // namespace oklab
