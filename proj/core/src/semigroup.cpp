#include "oklab/semigroup.hpp"

#include "oklab/detail/dense_counter.hpp"
#include "oklab/error.hpp"
#include "oklab/fit.hpp"
#include "oklab/memory_guard.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <variant>

namespace oklab {

namespace {

struct Generated {
  std::vector<LatticePoint> generators;
  std::vector<IntPoint> values;
  std::vector<Degree> degrees;
  std::int64_t max_abs_value = 0;
};

struct Restricted {
  GradedSemigroup parent;
  Degree direction;
};

std::int64_t total(std::span<const std::int64_t> d) { return std::accumulate(d.begin(), d.end(), std::int64_t{0}); }

void check_degree(std::span<const std::int64_t> n, std::size_t s, const char* op) {
  if (n.size() != s) fail(ErrorKind::DimensionMismatch, op, "degree " + to_string(Degree(n.begin(), n.end())));
  for (auto x : n) {
    if (x < 0) fail(ErrorKind::Validation, op, "negative degree " + to_string(Degree(n.begin(), n.end())));
  }
}

}  // namespace

struct GradedSemigroup::Impl {
  std::size_t r = 0;
  std::size_t s = 0;
  std::variant<Generated, StaircaseSpec, Restricted> source;

  std::mutex mutex;
  std::map<Degree, PointSet> memo;
  std::size_t memo_bytes = 0;
  std::vector<std::uint64_t> dense_counts;  // s = 1 generated: #[S]_t for t < size
};

GradedSemigroup GradedSemigroup::from_generators(std::size_t r, std::size_t s, std::vector<LatticePoint> generators) {
  if (s == 0) fail(ErrorKind::Validation, "GradedSemigroup", "grading dimension s must be positive");
  Generated g;
  for (const auto& gen : generators) {
    if (gen.ambient_dim() != r + s) {
      fail(ErrorKind::DimensionMismatch, "GradedSemigroup",
           "generator " + to_string(gen) + " needs " + std::to_string(r + s) + " entries");
    }
    IntPoint v(r);
    Degree d(s);
    for (std::size_t i = 0; i < r; ++i) v[i] = to_int64(gen[i], "GradedSemigroup");
    for (std::size_t j = 0; j < s; ++j) {
      d[j] = to_int64(gen[r + j], "GradedSemigroup");
      if (d[j] < 0) fail(ErrorKind::Validation, "GradedSemigroup", "generator " + to_string(gen) + " has a negative degree");
    }
    if (total(d) == 0) fail(ErrorKind::Validation, "GradedSemigroup", "generator " + to_string(gen) + " has degree zero");
    for (auto x : v) g.max_abs_value = std::max(g.max_abs_value, x < 0 ? -x : x);
    g.values.push_back(std::move(v));
    g.degrees.push_back(std::move(d));
  }
  g.generators = std::move(generators);
  auto impl = std::make_shared<Impl>();
  impl->r = r;
  impl->s = s;
  impl->source = std::move(g);
  return GradedSemigroup(std::move(impl));
}

GradedSemigroup GradedSemigroup::from_staircase(StaircaseSpec spec, unsigned closure_bound) {
  if (spec.s == 0) fail(ErrorKind::Validation, "GradedSemigroup", "staircase needs s >= 1");
  if (auto bad = find_closure_violation(spec, closure_bound)) {
    fail(ErrorKind::Validation, "GradedSemigroup",
         "staircase is not closed under addition: pieces at " + to_string(bad->m) + " and " + to_string(bad->n));
  }
  auto impl = std::make_shared<Impl>();
  impl->r = 1;
  impl->s = spec.s;
  impl->source = std::move(spec);
  return GradedSemigroup(std::move(impl));
}

GradedSemigroup GradedSemigroup::restriction(const GradedSemigroup& parent, Degree direction) {
  check_degree(direction, parent.s(), "restriction");
  if (total(direction) == 0) fail(ErrorKind::Validation, "restriction", "direction must be nonzero");
  auto impl = std::make_shared<Impl>();
  impl->r = parent.r();
  impl->s = 1;
  impl->source = Restricted{parent, std::move(direction)};
  return GradedSemigroup(std::move(impl));
}

std::size_t GradedSemigroup::r() const noexcept { return impl_->r; }
std::size_t GradedSemigroup::s() const noexcept { return impl_->s; }

SemigroupSource GradedSemigroup::source() const noexcept {
  switch (impl_->source.index()) {
    case 0: return SemigroupSource::Generators;
    case 1: return SemigroupSource::Staircase;
    default: return SemigroupSource::Restriction;
  }
}

const std::vector<LatticePoint>& GradedSemigroup::generators() const {
  if (const auto* g = std::get_if<Generated>(&impl_->source)) return g->generators;
  fail(ErrorKind::Unsupported, "GradedSemigroup::generators", "semigroup is not given by generators");
}

const StaircaseSpec& GradedSemigroup::staircase() const {
  if (const auto* st = std::get_if<StaircaseSpec>(&impl_->source)) return *st;
  fail(ErrorKind::Unsupported, "GradedSemigroup::staircase", "semigroup is not given by a staircase rule");
}

const GradedSemigroup& GradedSemigroup::parent() const {
  if (const auto* rs = std::get_if<Restricted>(&impl_->source)) return rs->parent;
  fail(ErrorKind::Unsupported, "GradedSemigroup::parent", "semigroup is not a restriction");
}

const Degree& GradedSemigroup::direction() const {
  if (const auto* rs = std::get_if<Restricted>(&impl_->source)) return rs->direction;
  fail(ErrorKind::Unsupported, "GradedSemigroup::direction", "semigroup is not a restriction");
}

namespace {

Degree scaled(std::span<const std::int64_t> d, std::int64_t k) {
  Degree out(d.begin(), d.end());
  for (auto& x : out) x *= k;
  return out;
}

// Fills memo for every degree in the box [0, n]; the caller holds the lock.
void enumerate_box(const Generated& g, std::size_t r, std::map<Degree, PointSet>& memo, std::size_t& memo_bytes,
                   std::span<const std::int64_t> n) {
  if (memo.count(Degree(n.begin(), n.end()))) return;
  if (total(n) > 0 && g.max_abs_value > 0 && total(n) > PointSet::coordinate_limit(r) / g.max_abs_value) {
    fail(ErrorKind::ResourceLimit, "graded_piece",
         "coordinates at degree " + to_string(Degree(n.begin(), n.end())) + " exceed the packed range");
  }
  // Every degree of the box gets a memo entry; refuse before listing them.
  constexpr std::size_t entry_overhead = 160;
  double cells = 1;
  for (auto x : n) cells *= static_cast<double>(x + 1);
  const double entry_bytes = static_cast<double>(entry_overhead + 2 * n.size() * sizeof(std::int64_t));
  if (cells * entry_bytes > static_cast<double>(memory_limit_bytes())) {
    fail(ErrorKind::ResourceLimit, "graded_piece",
         "memory guard exceeded: the degree box up to " + to_string(Degree(n.begin(), n.end())) + " has " +
             std::to_string(static_cast<unsigned long long>(cells)) + " degrees");
  }
  std::vector<std::uint64_t> shifts;
  for (const auto& v : g.values) shifts.push_back(PointSet::key_shift(r, v));
  for (const auto& d : degrees_in_box(n)) {
    if (memo.count(d)) continue;
    if (total(d) == 0) {
      memo.emplace(d, PointSet::from_points(r, {IntPoint(r, 0)}));
      continue;
    }
    std::vector<std::uint64_t> keys;
    Degree prev(d.size());
    for (std::size_t k = 0; k < g.values.size(); ++k) {
      bool fits = true;
      for (std::size_t j = 0; j < d.size(); ++j) {
        prev[j] = d[j] - g.degrees[k][j];
        if (prev[j] < 0) fits = false;
      }
      if (!fits) continue;
      const auto& src = memo.at(prev).keys();
      const auto old = keys.size();
      keys.insert(keys.end(), src.begin(), src.end());
      for (auto it = keys.begin() + static_cast<std::ptrdiff_t>(old); it != keys.end(); ++it) *it += shifts[k];
      require_memory(memo_bytes + keys.capacity() * sizeof(std::uint64_t), "graded_piece", "degree " + to_string(d));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    memo_bytes += keys.size() * sizeof(std::uint64_t) + entry_overhead + d.size() * sizeof(std::int64_t);
    require_memory(memo_bytes, "graded_piece", "degree " + to_string(d));
    memo.emplace(d, PointSet::from_sorted_keys(r, std::move(keys)));
  }
}

}  // namespace

PointSet GradedSemigroup::graded_piece(std::span<const std::int64_t> n) const {
  check_degree(n, s(), "graded_piece");
  if (const auto* st = std::get_if<StaircaseSpec>(&impl_->source)) return st->piece(n);
  if (const auto* rs = std::get_if<Restricted>(&impl_->source)) return rs->parent.graded_piece(scaled(rs->direction, n[0]));
  const auto& g = std::get<Generated>(impl_->source);
  std::lock_guard lock(impl_->mutex);
  enumerate_box(g, r(), impl_->memo, impl_->memo_bytes, n);
  return impl_->memo.at(Degree(n.begin(), n.end()));
}

std::uint64_t GradedSemigroup::piece_size(std::span<const std::int64_t> n) const {
  check_degree(n, s(), "graded_piece");
  if (const auto* st = std::get_if<StaircaseSpec>(&impl_->source)) return st->piece_size(n);
  if (s() == 1 && is_finitely_generated()) return counts_along(n, 1)[1];
  return graded_piece(n).size();
}

std::vector<std::uint64_t> GradedSemigroup::counts_along(std::span<const std::int64_t> direction, std::int64_t k_max) const {
  check_degree(direction, s(), "counts_along");
  std::vector<std::uint64_t> out(static_cast<std::size_t>(k_max + 1), 0);
  if (const auto* st = std::get_if<StaircaseSpec>(&impl_->source)) {
    for (std::int64_t k = 0; k <= k_max; ++k) out[static_cast<std::size_t>(k)] = st->piece_size(scaled(direction, k));
    return out;
  }
  if (const auto* rs = std::get_if<Restricted>(&impl_->source)) {
    return rs->parent.counts_along(scaled(rs->direction, direction[0]), k_max);
  }
  const auto& g = std::get<Generated>(impl_->source);
  if (s() == 1) {
    const std::int64_t step = direction[0];
    const std::int64_t t_max = step * k_max;
    std::lock_guard lock(impl_->mutex);
    if (static_cast<std::int64_t>(impl_->dense_counts.size()) <= t_max) {
      std::vector<std::int64_t> degs;
      for (const auto& d : g.degrees) degs.push_back(d[0]);
      impl_->dense_counts = detail::dense_piece_counts(r(), g.values, degs, t_max);
    }
    for (std::int64_t k = 0; k <= k_max; ++k) out[static_cast<std::size_t>(k)] = impl_->dense_counts[static_cast<std::size_t>(k * step)];
    return out;
  }
  std::lock_guard lock(impl_->mutex);
  enumerate_box(g, r(), impl_->memo, impl_->memo_bytes, scaled(direction, k_max));
  for (std::int64_t k = 0; k <= k_max; ++k) out[static_cast<std::size_t>(k)] = impl_->memo.at(scaled(direction, k)).size();
  return out;
}

std::vector<LatticePoint> GradedSemigroup::elements_up_to(unsigned bound) const {
  std::vector<LatticePoint> out;
  for (const auto& d : degrees_up_to(s(), bound)) {
    if (total(d) == 0) continue;
    for (const auto& v : graded_piece(d).points()) {
      IntPoint full = v;
      full.insert(full.end(), d.begin(), d.end());
      out.push_back(LatticePoint::from_int64(full));
    }
  }
  return out;
}

std::vector<LatticePoint> GradedSemigroup::proxy_generators(unsigned bound) const {
  if (is_finitely_generated()) return generators();
  return elements_up_to(bound);
}

SemigroupInvariants invariants(const GradedSemigroup& S, unsigned proxy_bound) {
  if (S.s() != 1) fail(ErrorKind::Validation, "invariants", "needs a singly graded semigroup; restrict along a degree first");
  const std::size_t r = S.r();
  auto gens = S.proxy_generators(proxy_bound);
  if (gens.empty()) fail(ErrorKind::Validation, "invariants", "semigroup has no elements of positive degree");
  SemigroupInvariants inv;
  inv.empirical = !S.is_finitely_generated();
  inv.group = group_generated(gens, r + 1);
  inv.cone_dim = inv.group.rank();

  Integer m = 0;
  for (const auto& b : inv.group.basis().rows()) m = gcd(m, b[r]);
  inv.m = m;

  LatticePoint degree_functional(r + 1);
  degree_functional[r] = 1;
  auto drop_degree = [r](const Sublattice& l) {
    std::vector<LatticePoint> pts;
    for (const auto& b : l.basis().rows()) {
      LatticePoint v(r);
      for (std::size_t i = 0; i < r; ++i) v[i] = b[i];
      pts.push_back(std::move(v));
    }
    return group_generated(pts, r);
  };
  inv.boundary_lattice = drop_degree(intersect_hyperplane(saturation(inv.group), degree_functional));
  inv.boundary_group = drop_degree(intersect_hyperplane(inv.group, degree_functional));
  inv.ind = subgroup_index(inv.boundary_group, inv.boundary_lattice);

  PolyCone cone(r + 1, gens);
  const auto& h = cone.hrep();
  std::vector<LatticePoint> all = h.inequalities;
  all.insert(all.end(), h.equalities.begin(), h.equalities.end());
  const bool pointed = rank_of(all, r + 1) == r + 1;
  const bool meets_boundary = std::any_of(gens.begin(), gens.end(), [r](const LatticePoint& g) { return g[r] == 0; });
  inv.strongly_nonneg = pointed && !meets_boundary;
  return inv;
}

OkounkovBody okounkov_body(const GradedSemigroup& S, unsigned proxy_bound) {
  auto inv = invariants(S, proxy_bound);
  if (!inv.strongly_nonneg) fail(ErrorKind::Unsupported, "okounkov_body", "semigroup is not strongly non-negative");
  const std::size_t r = S.r();
  std::vector<RationalVector> pts;
  for (const auto& g : S.proxy_generators(proxy_bound)) {
    RationalVector p(r);
    for (std::size_t i = 0; i < r; ++i) p[i] = make_rational(inv.m * g[i], g[r]);
    pts.push_back(std::move(p));
  }
  return OkounkovBody{convex_hull(pts, r), inv.m, inv.empirical};
}

LimitCheck kk_limit_check(const GradedSemigroup& S, std::int64_t n_max, unsigned proxy_bound) {
  if (n_max < 4) fail(ErrorKind::Validation, "kk_limit_check", "n_max must be at least 4");
  auto inv = invariants(S, proxy_bound);
  if (!inv.strongly_nonneg) fail(ErrorKind::Unsupported, "kk_limit_check", "semigroup is not strongly non-negative");
  auto body = okounkov_body(S, proxy_bound);
  LimitCheck out;
  out.q = static_cast<std::size_t>(body.body.affine_dim());
  out.m = inv.m;
  out.ind = inv.ind;
  out.volume = integral_volume(body.body, inv.boundary_lattice);
  out.predicted = out.volume / Rational(inv.ind.value);

  const Degree step{to_int64(inv.m, "kk_limit_check")};
  auto counts = S.counts_along(step, n_max);
  std::vector<double> values(counts.begin(), counts.end());
  out.estimate = fit_tail(values, static_cast<unsigned>(out.q)).leading;
  const double predicted = out.predicted.get_d();
  out.rel_err = std::abs(out.estimate - predicted) / predicted;
  return out;
}

GradedSemigroup truncate(const GradedSemigroup& S, const Degree& p) {
  check_degree(p, S.s(), "truncate");
  if (total(p) == 0) fail(ErrorKind::Validation, "truncate", "truncation degree must be nonzero");
  auto piece = S.graded_piece(p);
  if (piece.empty()) fail(ErrorKind::EmptyTruncation, "truncate", "piece at degree " + to_string(p) + " is empty");
  std::vector<LatticePoint> gens;
  for (auto v : piece.points()) {
    v.insert(v.end(), p.begin(), p.end());
    gens.push_back(LatticePoint::from_int64(v));
  }
  return GradedSemigroup::from_generators(S.r(), S.s(), std::move(gens));
}

}  // namespace oklab
