#include "oklab/ideal_family.hpp"

#include "oklab/error.hpp"
#include "oklab/fit.hpp"
#include "oklab/memory_guard.hpp"
#include "oklab/parallel.hpp"

#include <bit>
#include <cmath>
#include <map>

namespace oklab {

namespace {

// Points of N^g with coordinate sum < side, as a bitmap over [0, side)^g.
class GridBits {
 public:
  GridBits(std::size_t dims, std::size_t side) : dims_(dims), side_(side) {
    std::size_t cells = 1;
    for (std::size_t i = 0; i < dims; ++i) cells *= side;
    require_memory(cells / 8 + 8, "fixed_quotient_dim", "bitmap of " + std::to_string(cells) + " cells");
    words_.assign(cells / 64 + 1, 0);
  }

  std::size_t offset(const Exponent& e) const {
    std::size_t idx = 0, stride = 1;
    for (std::size_t i = 0; i < dims_; ++i) {
      idx += e[i] * stride;
      stride *= side_;
    }
    return idx;
  }
  std::size_t stride(std::size_t axis) const {
    std::size_t s = 1;
    for (std::size_t i = 0; i < axis; ++i) s *= side_;
    return s;
  }

  void set(std::size_t idx) { words_[idx / 64] |= std::uint64_t{1} << (idx % 64); }

  void or_shifted(const GridBits& src, std::size_t shift) {
    const std::size_t ws = shift / 64, bs = shift % 64;
    for (std::size_t w = 0; w + ws < words_.size(); ++w) {
      const auto x = src.words_[w];
      if (!x) continue;
      words_[w + ws] |= x << bs;
      if (bs && w + ws + 1 < words_.size()) words_[w + ws + 1] |= x >> (64 - bs);
    }
  }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }

  std::vector<Exponent> points() const {
    std::vector<Exponent> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (auto x = words_[w]; x; x &= x - 1) {
        std::size_t idx = w * 64 + static_cast<std::size_t>(std::countr_zero(x));
        Exponent e(dims_);
        for (std::size_t i = 0; i < dims_; ++i) {
          e[i] = static_cast<unsigned>(idx % side_);
          idx /= side_;
        }
        out.push_back(std::move(e));
      }
    }
    return out;
  }

 private:
  std::size_t dims_;
  std::size_t side_;
  std::vector<std::uint64_t> words_;
};

// Generators of an equigenerated ideal with the last exponent dropped.
struct Projected {
  std::vector<Exponent> points;
  unsigned degree = 0;
};

Projected project(const MonomialIdeal& ideal) {
  Projected out;
  out.degree = *ideal.homogeneous_degree();
  const std::size_t g = ideal.num_vars() - 1;
  for (const auto& e : ideal.min_gens()) out.points.emplace_back(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(g));
  return out;
}

Projected sumset(const Projected& a, const Projected& b, std::size_t dims) {
  const unsigned degree = a.degree + b.degree;
  GridBits src(dims, degree + 1), dst(dims, degree + 1);
  for (const auto& p : a.points) src.set(src.offset(p));
  for (const auto& q : b.points) dst.or_shifted(src, src.offset(q));
  return Projected{dst.points(), degree};
}

// sum_{t < k} #(P + {|e| <= t}): monomials of N in degrees [deg N, deg N + k).
Integer count_layers(const Projected& p, std::size_t dims, std::int64_t k) {
  if (k <= 0) return 0;
  const auto side = static_cast<std::size_t>(p.degree) + static_cast<std::size_t>(k);
  GridBits cur(dims, side);
  for (const auto& e : p.points) cur.set(cur.offset(e));
  Integer total = 0;
  for (std::int64_t t = 0; t < k; ++t) {
    total += static_cast<unsigned long>(cur.count());
    if (t + 1 == k) break;
    GridBits next = cur;
    for (std::size_t i = 0; i < dims; ++i) next.or_shifted(cur, cur.stride(i));
    cur = std::move(next);
  }
  return total;
}

std::optional<unsigned> maximal_power_degree(const MonomialIdeal& I) {
  auto deg = I.homogeneous_degree();
  if (!deg || *deg == 0) return std::nullopt;
  if (I == MonomialIdeal::maximal_power(I.num_vars(), *deg)) return deg;
  return std::nullopt;
}

void check_same_ring(const MonomialIdeal& I, const std::vector<MonomialIdeal>& J, const char* op) {
  for (const auto& j : J) {
    if (j.num_vars() != I.num_vars()) fail(ErrorKind::DimensionMismatch, op, "ideals live in different rings");
  }
}

// Projected generators of J_1^{n_1} ... J_s^{n_s}, memoized by exponent vector.
class FastCounter {
 public:
  FastCounter(std::size_t num_vars, unsigned m_power, std::vector<MonomialIdeal> J)
      : dims_(num_vars - 1), m_power_(m_power) {
    for (const auto& j : J) bases_.push_back(project(j));
  }

  Integer operator()(std::int64_t n0, const Degree& n) {
    return count_layers(product(n), dims_, static_cast<std::int64_t>(m_power_) * n0);
  }

 private:
  const Projected& power(std::size_t i, std::int64_t e) {
    auto key = std::make_pair(i, e);
    if (auto it = powers_.find(key); it != powers_.end()) return it->second;
    Projected value;
    if (e == 0) {
      value = Projected{{Exponent(dims_, 0)}, 0};
    } else {
      value = sumset(power(i, e - 1), bases_[i], dims_);
    }
    return powers_.emplace(key, std::move(value)).first->second;
  }

  const Projected& product(const Degree& n) {
    if (auto it = products_.find(n); it != products_.end()) return it->second;
    Projected value{{Exponent(dims_, 0)}, 0};
    for (std::size_t i = 0; i < n.size(); ++i) value = sumset(value, power(i, n[i]), dims_);
    return products_.emplace(n, std::move(value)).first->second;
  }

  std::size_t dims_;
  unsigned m_power_;
  std::vector<Projected> bases_;
  std::map<std::pair<std::size_t, std::int64_t>, Projected> powers_;
  std::map<Degree, Projected> products_;
};

bool fast_path_applies(const MonomialIdeal& I, const std::vector<MonomialIdeal>& J) {
  if (I.num_vars() == 0 || !maximal_power_degree(I)) return false;
  return std::all_of(J.begin(), J.end(), [](const MonomialIdeal& j) { return j.homogeneous_degree().has_value(); });
}

Integer general_count(const MonomialIdeal& I, const std::vector<MonomialIdeal>& J, std::int64_t n0, const Degree& n) {
  MonomialIdeal num = MonomialIdeal::unit(I.num_vars());
  for (std::size_t i = 0; i < J.size(); ++i) num = product(num, power(J[i], static_cast<unsigned>(n[i])));
  const auto den = product(power(I, static_cast<unsigned>(n0)), num);
  return quotient_dim(num, den).count;
}

void check_type(std::size_t num_vars, std::size_t s, unsigned d0, const Exponent& d, const char* op) {
  if (d.size() != s) fail(ErrorKind::DimensionMismatch, op, "type vector needs " + std::to_string(s) + " entries after d0");
  if (d0 + total_degree(d) + 1 != num_vars) {
    fail(ErrorKind::Validation, op, "d0 + |d| must equal " + std::to_string(num_vars - 1));
  }
}

Polytope sum_of(const std::vector<Polytope>& bodies, const std::vector<std::size_t>& subset) {
  Polytope acc = bodies[subset.front()];
  for (std::size_t k = 1; k < subset.size(); ++k) acc = minkowski_sum(acc, bodies[subset[k]]);
  return acc;
}

Polytope newton_polytope(const MonomialIdeal& ideal) {
  std::vector<RationalVector> pts;
  for (const auto& g : ideal.min_gens()) {
    RationalVector p(ideal.num_vars());
    for (std::size_t i = 0; i < g.size(); ++i) p[i] = g[i];
    pts.push_back(std::move(p));
  }
  return convex_hull(pts, ideal.num_vars());
}

}  // namespace

GradedIdealFamily GradedIdealFamily::powers(MonomialIdeal base) {
  const auto n = base.num_vars();
  if (base.is_zero()) fail(ErrorKind::Validation, "GradedIdealFamily", "powers of the zero ideal");
  return GradedIdealFamily(n, PowersRule{std::move(base)});
}

GradedIdealFamily GradedIdealFamily::explicit_members(std::size_t num_vars, std::vector<MonomialIdeal> members) {
  for (const auto& m : members) {
    if (m.num_vars() != num_vars) fail(ErrorKind::DimensionMismatch, "GradedIdealFamily", "member in a different ring");
  }
  GradedIdealFamily family(num_vars, ExplicitRule{std::move(members)});
  auto check = check_family(family, static_cast<unsigned>(*family.last_member()));
  if (!check.closed) {
    fail(ErrorKind::Validation, "GradedIdealFamily",
         "J_" + std::to_string(check.closure_failure->first) + " J_" + std::to_string(check.closure_failure->second) +
             " is not inside J_" + std::to_string(check.closure_failure->first + check.closure_failure->second));
  }
  return family;
}

GradedIdealFamily GradedIdealFamily::from_body(Polytope body, std::int64_t h) {
  constexpr const char* op = "body_to_family";
  if (body.empty()) fail(ErrorKind::Validation, op, "empty body");
  if (h < 1) fail(ErrorKind::Validation, op, "h must be positive");
  for (const auto& v : body.vertices()) {
    Rational sum = 0;
    for (const auto& c : v.coords()) {
      if (c < 0) fail(ErrorKind::Validation, op, "vertex " + to_string(v) + " leaves the nonnegative orthant");
      sum += c;
    }
    if (sum > h) {
      fail(ErrorKind::Validation, op, "homogenization infeasible: vertex " + to_string(v) + " has coordinate sum " +
                                          format_rational(sum) + " > h = " + std::to_string(h));
    }
  }
  const auto d = body.ambient_dim();
  return GradedIdealFamily(d + 1, FromBodyRule{std::move(body), h});
}

GradedIdealFamily body_to_family(const Polytope& body, std::int64_t h) { return GradedIdealFamily::from_body(body, h); }

std::optional<std::int64_t> GradedIdealFamily::last_member() const {
  if (const auto* e = std::get_if<ExplicitRule>(&rule_)) return static_cast<std::int64_t>(e->members.size());
  return std::nullopt;
}

MonomialIdeal GradedIdealFamily::member(std::int64_t n) const {
  if (n < 0) fail(ErrorKind::Validation, "GradedIdealFamily::member", "negative index");
  if (n == 0) return MonomialIdeal::unit(num_vars_);
  if (const auto* p = std::get_if<PowersRule>(&rule_)) {
    if (auto c = maximal_power_degree(p->base)) return MonomialIdeal::maximal_power(num_vars_, *c * static_cast<unsigned>(n));
    return power(p->base, static_cast<unsigned>(n));
  }
  if (const auto* e = std::get_if<ExplicitRule>(&rule_)) {
    if (n > static_cast<std::int64_t>(e->members.size())) {
      fail(ErrorKind::Validation, "GradedIdealFamily::member",
           "explicit family lists " + std::to_string(e->members.size()) + " members, J_" + std::to_string(n) + " requested");
    }
    return e->members[static_cast<std::size_t>(n - 1)];
  }
  const auto& fb = std::get<FromBodyRule>(rule_);
  const std::size_t d = num_vars_ - 1;
  // Integer form of the H-representation of n K.
  struct Row {
    std::vector<Integer> a;
    Integer b;
    bool equality;
  };
  std::vector<Row> rows;
  auto add = [&](const LatticePoint& normal, const Rational& offset, bool eq) {
    const Integer den = offset.get_den();
    Row r{{}, offset.get_num() * n, eq};
    for (std::size_t i = 0; i < d; ++i) r.a.push_back(normal[i] * den);
    rows.push_back(std::move(r));
  };
  for (const auto& f : fb.body.halfspaces()) add(f.normal, f.offset, false);
  for (const auto& e : fb.body.equalities()) add(e.normal, e.offset, true);

  std::vector<std::int64_t> top(d, 0);
  for (const auto& v : fb.body.vertices()) {
    for (std::size_t i = 0; i < d; ++i) {
      Rational scaled = v[i] * n;
      top[i] = std::max(top[i], to_int64(Integer(scaled.get_num() / scaled.get_den()), "body_to_family"));
    }
  }
  const std::int64_t level = fb.h * n;
  std::vector<Exponent> gens;
  for (const auto& m : degrees_in_box(top)) {
    std::int64_t sum = 0;
    for (auto c : m) sum += c;
    if (sum > level) continue;
    bool inside = true;
    for (const auto& r : rows) {
      Integer lhs = 0;
      for (std::size_t i = 0; i < d; ++i) lhs += r.a[i] * m[i];
      inside = r.equality ? lhs == r.b : lhs >= r.b;
      if (!inside) break;
    }
    if (!inside) continue;
    Exponent e(m.begin(), m.end());
    e.push_back(static_cast<unsigned>(level - sum));
    gens.push_back(std::move(e));
  }
  return MonomialIdeal(num_vars_, std::move(gens));
}

std::int64_t GradedIdealFamily::growth_bound() const {
  if (const auto* p = std::get_if<PowersRule>(&rule_)) return p->base.max_generator_degree();
  if (const auto* fb = std::get_if<FromBodyRule>(&rule_)) return fb->h;
  const auto& e = std::get<ExplicitRule>(rule_);
  std::int64_t beta = 0;
  for (std::size_t k = 0; k < e.members.size(); ++k) {
    const auto n = static_cast<std::int64_t>(k + 1);
    beta = std::max(beta, (static_cast<std::int64_t>(e.members[k].max_generator_degree()) + n - 1) / n);
  }
  return beta;
}

std::optional<unsigned> GradedIdealFamily::maximal_power_step() const {
  if (const auto* p = std::get_if<PowersRule>(&rule_)) return maximal_power_degree(p->base);
  return std::nullopt;
}

FamilyCheck check_family(const GradedIdealFamily& family, unsigned bound) {
  FamilyCheck out;
  const auto beta = family.growth_bound();
  for (std::int64_t total = 1; total <= static_cast<std::int64_t>(bound); ++total) {
    const auto sum = family.member(total);
    if (static_cast<std::int64_t>(sum.max_generator_degree()) > beta * total && out.growth_ok) {
      out.growth_ok = false;
      out.growth_failure = total;
    }
    for (std::int64_t i = 1; i <= total / 2 && out.closed; ++i) {
      if (!sum.contains(product(family.member(i), family.member(total - i)))) {
        out.closed = false;
        out.closure_failure = std::make_pair(i, total - i);
      }
    }
  }
  return out;
}

Integer fixed_quotient_dim(const MonomialIdeal& I, const std::vector<MonomialIdeal>& J, std::int64_t n0, const Degree& n,
                           CountRoute route) {
  constexpr const char* op = "fixed_quotient_dim";
  check_same_ring(I, J, op);
  if (n.size() != J.size()) fail(ErrorKind::DimensionMismatch, op, "one exponent per ideal J_i");
  if (n0 < 0 || std::any_of(n.begin(), n.end(), [](std::int64_t v) { return v < 0; })) {
    fail(ErrorKind::Validation, op, "exponents must be nonnegative");
  }
  if (route == CountRoute::Auto && fast_path_applies(I, J)) {
    return FastCounter(I.num_vars(), *maximal_power_degree(I), J)(n0, n);
  }
  return general_count(I, J, n0, n);
}

Integer family_quotient_dim(const GradedIdealFamily& I, const std::vector<GradedIdealFamily>& J, std::int64_t n0,
                            const Degree& n) {
  if (n.size() != J.size()) fail(ErrorKind::DimensionMismatch, "family_quotient_dim", "one index per family");
  std::vector<MonomialIdeal> members;
  for (std::size_t i = 0; i < J.size(); ++i) members.push_back(J[i].member(n[i]));
  return fixed_quotient_dim(I.member(n0), members, 1, Degree(J.size(), 1));
}

double bhattacharya_limit(const GradedIdealFamily& I, const std::vector<GradedIdealFamily>& J, std::int64_t n0,
                          const Degree& n, std::int64_t n_max) {
  if (n_max < 4) fail(ErrorKind::Validation, "bhattacharya_limit", "n_max must be at least 4");
  std::vector<double> values(static_cast<std::size_t>(n_max + 1));
  parallel_for(values.size(), [&](std::size_t idx) {
    const auto k = static_cast<std::int64_t>(idx);
    Degree kn = n;
    for (auto& v : kn) v *= k;
    values[idx] = family_quotient_dim(I, J, k * n0, kn).get_d();
  });
  return fit_tail(values, static_cast<unsigned>(I.num_vars())).leading;
}

BhattacharyaPolynomial bhattacharya_polynomial(const MonomialIdeal& I, const std::vector<MonomialIdeal>& J) {
  constexpr const char* op = "bhattacharya_polynomial";
  check_same_ring(I, J, op);
  const auto vars = 1 + J.size();
  const auto degree = static_cast<unsigned>(I.num_vars());
  std::function<Integer(const Degree&)> value;
  std::optional<FastCounter> fast;
  if (fast_path_applies(I, J)) {
    fast.emplace(I.num_vars(), *maximal_power_degree(I), J);
    value = [&](const Degree& a) { return (*fast)(a[0], Degree(a.begin() + 1, a.end())); };
  } else {
    value = [&](const Degree& a) { return general_count(I, J, a[0], Degree(a.begin() + 1, a.end())); };
  }
  auto fit = fit_eventual_polynomial(vars, degree, value, op);
  BhattacharyaPolynomial out;
  out.leading = fit.polynomial.homogeneous_part(degree);
  out.full = std::move(fit.polynomial);
  out.start = fit.start;
  return out;
}

Rational fixed_mixed_multiplicity(const BhattacharyaPolynomial& g, unsigned d0, const Exponent& d) {
  Exponent e{d0 + 1};
  e.insert(e.end(), d.begin(), d.end());
  return g.leading.coefficient(e) * Rational(multi_factorial(e));
}

MixedMultiplicityReport family_mixed_multiplicities(const GradedIdealFamily& I, const std::vector<GradedIdealFamily>& J,
                                                    unsigned d0, const Exponent& d,
                                                    const std::vector<std::int64_t>& p_schedule) {
  constexpr const char* op = "family_mixed_multiplicities";
  for (const auto& j : J) {
    if (j.num_vars() != I.num_vars()) fail(ErrorKind::DimensionMismatch, op, "families live in different rings");
  }
  check_type(I.num_vars(), J.size(), d0, d, op);
  std::vector<LadderStep> ladder;
  for (auto p : p_schedule) {
    if (p < 1) fail(ErrorKind::Validation, op, "schedule entries must be positive");
    std::vector<MonomialIdeal> members;
    for (const auto& j : J) members.push_back(j.member(p));
    auto g = bhattacharya_polynomial(I.member(p), members);
    Integer scale = 1;
    for (std::size_t k = 0; k < I.num_vars(); ++k) scale *= p;
    ladder.push_back(LadderStep{p, fixed_mixed_multiplicity(g, d0, d) / Rational(scale)});
  }
  Exponent type{d0};
  type.insert(type.end(), d.begin(), d.end());
  return ladder_report(std::move(type), std::move(ladder));
}

FamilyPositivity family_positivity(const std::vector<GradedIdealFamily>& J, unsigned d0, const Exponent& d,
                                   std::int64_t p_cap) {
  constexpr const char* op = "family_positivity";
  if (J.empty()) fail(ErrorKind::Validation, op, "no families");
  check_type(J.front().num_vars(), J.size(), d0, d, op);
  const auto subsets = nonempty_subsets(J.size());

  auto spreads_at = [&](std::int64_t p) {
    std::vector<Polytope> newton;
    for (const auto& j : J) {
      auto member = j.member(p);
      if (!member.homogeneous_degree()) {
        fail(ErrorKind::Unsupported, op, "member J_" + std::to_string(p) + " " + to_string(member) + " is not equigenerated");
      }
      newton.push_back(newton_polytope(member));
    }
    // The product of equigenerated ideals has the Minkowski sum as Newton polytope.
    std::vector<std::int64_t> out;
    for (const auto& subset : subsets) out.push_back(1 + sum_of(newton, subset).affine_dim());
    return out;
  };

  FamilyPositivity result;
  auto previous = spreads_at(1);
  std::int64_t p = 1;
  while (true) {
    if (2 * p > p_cap) {
      fail(ErrorKind::RegularityNotReached, op, "analytic spreads still changing at p = " + std::to_string(p));
    }
    auto next = spreads_at(2 * p);
    if (next == previous) break;
    previous = std::move(next);
    p *= 2;
  }
  result.p_used = p;
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    SubsetInequality check;
    for (auto j : subsets[k]) {
      check.axes.push_back(j + 1);
      check.lhs += d[j];
    }
    check.rhs = previous[k] - 1;
    if (check.lhs > check.rhs && result.positive) {
      result.positive = false;
      result.violated = check.axes;
    }
    result.checks.push_back(std::move(check));
  }
  return result;
}

std::int64_t minimal_homogenization(const Polytope& body) {
  Rational best = 1;
  for (const auto& v : body.vertices()) {
    Rational sum = 0;
    for (const auto& c : v.coords()) sum += c;
    best = std::max(best, sum);
  }
  Integer ceil_value = best.get_num() / best.get_den();
  if (ceil_value * best.get_den() < best.get_num()) ceil_value += 1;
  return to_int64(ceil_value, "minimal_homogenization");
}

BridgeResult mixed_volume_via_ideals(const std::vector<Polytope>& bodies, const Exponent& d,
                                     const std::vector<std::int64_t>& p_schedule) {
  constexpr const char* op = "mixed_volume_via_ideals";
  if (bodies.empty()) fail(ErrorKind::Validation, op, "no bodies");
  const auto dim = bodies.front().ambient_dim();
  if (d.size() != bodies.size()) fail(ErrorKind::DimensionMismatch, op, "one type entry per body");
  if (total_degree(d) != dim) fail(ErrorKind::Validation, op, "|d| must equal the ambient dimension");

  std::vector<GradedIdealFamily> families;
  for (const auto& K : bodies) families.push_back(body_to_family(K, minimal_homogenization(K)));
  const auto m_adic = GradedIdealFamily::m_adic(dim + 1);

  BridgeResult out;
  out.ideal_report = family_mixed_multiplicities(m_adic, families, 0, d, p_schedule);
  out.ideal_side = out.ideal_report.value;
  out.geometric_side = mixed_volume(bodies, d);
  const double geometric = to_double(out.geometric_side);
  out.rel_diff = std::abs(out.ideal_side - geometric) / std::max(geometric, 1.0);

  for (const auto& subset : nonempty_subsets(bodies.size())) {
    std::int64_t lhs = 0;
    for (auto j : subset) lhs += d[j];
    if (lhs > sum_of(bodies, subset).affine_dim()) {
      out.geometric_positive = false;
      std::vector<std::size_t> axes;
      for (auto j : subset) axes.push_back(j + 1);
      out.geometric_violated = std::move(axes);
      break;
    }
  }
  out.ideal_positivity = family_positivity(families, 0, d);
  return out;
}

}  // namespace oklab
