#include "oklab/polytope.hpp"

#include "oklab/detail/double_description.hpp"
#include "oklab/error.hpp"

#include <algorithm>
#include <set>

namespace oklab {

namespace {

// Homogenizes p to a primitive integer vector (D p, D).
LatticePoint homogenize(const RationalVector& p) {
  Integer den = 1;
  for (const auto& x : p.coords()) den = lcm(den, x.get_den());
  LatticePoint v(p.ambient_dim() + 1);
  for (std::size_t i = 0; i < p.ambient_dim(); ++i) v[i] = Rational(p[i] * den).get_num();
  v[p.ambient_dim()] = den;
  return v.primitive();
}

Rational affine_value(const LatticePoint& normal, const RationalVector& x) {
  Rational sum = 0;
  for (std::size_t i = 0; i < x.ambient_dim(); ++i) sum += Rational(normal[i]) * x[i];
  return sum;
}

LatticePoint head(const LatticePoint& v, std::size_t n) {
  return LatticePoint(std::vector<Integer>(v.coords().begin(), v.coords().begin() + static_cast<std::ptrdiff_t>(n)));
}

// Scales a rational row to a primitive integer row.
LatticePoint clear_denominators(const std::vector<Rational>& row) {
  Integer den = 1;
  for (const auto& x : row) den = lcm(den, x.get_den());
  LatticePoint v(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) v[i] = Rational(row[i] * den).get_num();
  return v.primitive();
}

std::vector<LatticePoint> canonical_lineality(const std::vector<LatticePoint>& lineality, std::size_t dim) {
  if (lineality.empty()) return {};
  return saturation(group_generated(lineality, dim)).basis().rows();
}

}  // namespace

bool Polytope::contains(const RationalVector& x) const {
  if (x.ambient_dim() != ambient_dim_) fail(ErrorKind::DimensionMismatch, "Polytope::contains", to_string(x));
  if (empty()) return false;
  for (const auto& e : equalities_) {
    if (affine_value(e.normal, x) != e.offset) return false;
  }
  for (const auto& h : facets_) {
    if (affine_value(h.normal, x) < h.offset) return false;
  }
  return true;
}

Polytope convex_hull(const std::vector<RationalVector>& points, std::size_t ambient_dim) {
  if (points.empty()) return Polytope(ambient_dim);
  const std::size_t n = points.front().ambient_dim();
  for (const auto& p : points) {
    if (p.ambient_dim() != n) fail(ErrorKind::DimensionMismatch, "convex_hull", "point " + to_string(p));
  }
  std::vector<RationalVector> pts(points);
  for (auto& p : pts) {
    for (std::size_t i = 0; i < n; ++i) p[i].canonicalize();
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<LatticePoint> homog;
  homog.reserve(pts.size());
  for (const auto& p : pts) homog.push_back(homogenize(p));
  auto dual = detail::double_description(n + 1, homog);
  auto lin = canonical_lineality(dual.lineality, n + 1);
  auto facets = detail::reduce_modulo(dual.rays, lin);
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());

  Polytope out(n);
  for (const auto& e : lin) out.equalities_.push_back(Hyperplane{head(e, n), Rational(-e[n])});
  for (const auto& a : facets) out.facets_.push_back(Halfspace{head(a, n), Rational(-a[n])});
  out.affine_dim_ = static_cast<int>(n) - static_cast<int>(lin.size());

  for (const auto& p : pts) {
    std::vector<LatticePoint> tight;
    for (const auto& h : out.facets_) {
      if (affine_value(h.normal, p) == h.offset) tight.push_back(h.normal);
    }
    if (static_cast<int>(rank_of(tight, n)) == out.affine_dim_) out.vertices_.push_back(p);
  }
  std::vector<LatticePoint> eq_normals;
  for (const auto& e : out.equalities_) eq_normals.push_back(e.normal);
  out.hull_lattice_ = orthogonal_lattice(IntMatrix(std::move(eq_normals), n));
  return out;
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) fail(ErrorKind::DimensionMismatch, "minkowski_sum", "ambient dimensions differ");
  if (p.empty() || q.empty()) return Polytope(p.ambient_dim());
  std::vector<RationalVector> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices()) {
    for (const auto& b : q.vertices()) sums.push_back(a + b);
  }
  return convex_hull(sums, p.ambient_dim());
}

Polytope scale(const Polytope& p, const Rational& factor) {
  std::vector<RationalVector> pts;
  for (const auto& v : p.vertices()) pts.push_back(factor * v);
  return convex_hull(pts, p.ambient_dim());
}

Polytope translate(const Polytope& p, const RationalVector& shift) {
  std::vector<RationalVector> pts;
  for (const auto& v : p.vertices()) pts.push_back(v + shift);
  return convex_hull(pts, p.ambient_dim());
}

std::vector<std::vector<RationalVector>> pulling_triangulation(const Polytope& p) {
  std::vector<std::vector<RationalVector>> out;
  if (p.empty()) return out;
  if (p.affine_dim() == 0) {
    out.push_back({p.vertices().front()});
    return out;
  }
  const RationalVector& apex = p.vertices().front();
  for (const auto& h : p.halfspaces()) {
    if (affine_value(h.normal, apex) == h.offset) continue;
    std::vector<RationalVector> active;
    for (const auto& v : p.vertices()) {
      if (affine_value(h.normal, v) == h.offset) active.push_back(v);
    }
    for (auto& simplex : pulling_triangulation(convex_hull(active, p.ambient_dim()))) {
      simplex.push_back(apex);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

Rational integral_volume(const Polytope& p, const Sublattice& reference_lattice) {
  if (p.empty()) return 0;
  if (reference_lattice.ambient_dim() != p.ambient_dim()) {
    fail(ErrorKind::DimensionMismatch, "integral_volume", "lattice and polytope live in different spaces");
  }
  if (static_cast<int>(reference_lattice.rank()) != p.affine_dim()) {
    fail(ErrorKind::MeasureMismatch, "integral_volume",
         "lattice rank " + std::to_string(reference_lattice.rank()) + " differs from affine dimension " +
             std::to_string(p.affine_dim()));
  }
  for (const auto& b : reference_lattice.basis().rows()) {
    for (const auto& e : p.equalities()) {
      if (dot(e.normal, b) != 0) {
        fail(ErrorKind::MeasureMismatch, "integral_volume", "lattice vector " + to_string(b) + " leaves the affine hull");
      }
    }
  }
  const std::size_t k = reference_lattice.rank();
  if (k == 0) return 1;
  const RationalVector& base = p.vertices().front();
  std::vector<RationalVector> local;
  for (const auto& v : p.vertices()) {
    auto c = reference_lattice.rational_coordinates(v - base);
    if (!c) fail(ErrorKind::InternalConsistency, "integral_volume", "vertex outside the affine hull");
    local.emplace_back(std::move(*c));
  }
  Rational total = 0;
  for (const auto& simplex : pulling_triangulation(convex_hull(local, k))) {
    std::vector<std::vector<Rational>> m;
    for (std::size_t i = 0; i + 1 < simplex.size(); ++i) m.push_back((simplex[i] - simplex.back()).coords());
    total += abs(determinant(std::move(m)));
  }
  return total / Rational(factorial(static_cast<unsigned>(k)));
}

Rational euclidean_volume(const Polytope& p) {
  if (p.empty() || p.affine_dim() < static_cast<int>(p.ambient_dim())) {
    return p.ambient_dim() == 0 && !p.empty() ? Rational(1) : Rational(0);
  }
  return integral_volume(p, Sublattice::full(p.ambient_dim()));
}

std::vector<LatticePoint> ConeHRep::as_inequalities() const {
  std::vector<LatticePoint> out;
  for (const auto& e : equalities) {
    out.push_back(e);
    out.push_back(-e);
  }
  out.insert(out.end(), inequalities.begin(), inequalities.end());
  return out;
}

PolyCone::PolyCone(std::size_t ambient_dim, std::vector<LatticePoint> rays)
    : ambient_dim_(ambient_dim), rays_(std::move(rays)), cache_(std::make_shared<Cache>()) {
  for (const auto& r : rays_) {
    if (r.ambient_dim() != ambient_dim_) fail(ErrorKind::DimensionMismatch, "PolyCone", "ray " + to_string(r));
    if (r.is_zero()) fail(ErrorKind::InvalidRay, "PolyCone", "zero ray");
  }
}

PolyCone PolyCone::from_hrep(std::size_t ambient_dim, ConeHRep hrep) {
  auto gens = detail::double_description(ambient_dim, hrep.as_inequalities());
  std::vector<LatticePoint> rays = gens.rays;
  for (const auto& l : gens.lineality) {
    rays.push_back(l);
    rays.push_back(-l);
  }
  return PolyCone(ambient_dim, std::move(rays));
}

const ConeHRep& PolyCone::hrep() const {
  std::call_once(cache_->once, [this] {
    auto dual = detail::double_description(ambient_dim_, rays_);
    auto lin = canonical_lineality(dual.lineality, ambient_dim_);
    auto facets = detail::reduce_modulo(dual.rays, lin);
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    cache_->hrep = ConeHRep{std::move(lin), std::move(facets)};
  });
  return cache_->hrep;
}

bool PolyCone::contains(const RationalVector& x) const {
  if (x.ambient_dim() != ambient_dim_) fail(ErrorKind::DimensionMismatch, "PolyCone::contains", to_string(x));
  const auto& h = hrep();
  for (const auto& e : h.equalities) {
    if (affine_value(e, x) != 0) return false;
  }
  for (const auto& a : h.inequalities) {
    if (affine_value(a, x) < 0) return false;
  }
  return true;
}

std::vector<LatticePoint> cone_hrep(const PolyCone& c) { return c.hrep().as_inequalities(); }

Polytope polytope_from_hrep(std::size_t ambient_dim, const std::vector<Halfspace>& halfspaces,
                            const std::vector<Hyperplane>& equalities) {
  const std::size_t n = ambient_dim;
  auto lift = [n](const LatticePoint& normal, const Rational& offset) {
    std::vector<Rational> row(normal.coords().begin(), normal.coords().end());
    row.push_back(-offset);
    return clear_denominators(row);
  };
  std::vector<LatticePoint> ineq;
  for (const auto& h : halfspaces) ineq.push_back(lift(h.normal, h.offset));
  for (const auto& e : equalities) {
    auto row = lift(e.normal, e.offset);
    ineq.push_back(row);
    ineq.push_back(-row);
  }
  LatticePoint t(n + 1);
  t[n] = 1;
  ineq.push_back(t);
  auto gens = detail::double_description(n + 1, ineq);
  std::vector<RationalVector> points;
  bool recession = !gens.lineality.empty();
  for (const auto& r : gens.rays) {
    if (r[n] == 0) {
      recession = true;
      continue;
    }
    RationalVector p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = make_rational(r[i], r[n]);
    points.push_back(std::move(p));
  }
  if (points.empty()) return Polytope(n);
  if (recession) fail(ErrorKind::Unsupported, "polytope_from_hrep", "the region is unbounded");
  return convex_hull(points, n);
}

Polytope cone_fiber(const PolyCone& c, std::size_t r, std::size_t s, const RationalVector& x) {
  if (c.ambient_dim() != r + s || x.ambient_dim() != s) {
    fail(ErrorKind::DimensionMismatch, "cone_fiber",
         "cone of dimension " + std::to_string(c.ambient_dim()) + " cannot be split as " + std::to_string(r) + "+" +
             std::to_string(s) + " over " + to_string(x));
  }
  const auto& h = c.hrep();
  auto split = [&](const LatticePoint& a) {
    LatticePoint val(r);
    for (std::size_t i = 0; i < r; ++i) val[i] = a[i];
    Rational rest = 0;
    for (std::size_t j = 0; j < s; ++j) rest += Rational(a[r + j]) * x[j];
    return std::pair<LatticePoint, Rational>(std::move(val), -rest);
  };
  std::vector<Halfspace> hs;
  std::vector<Hyperplane> eqs;
  for (const auto& a : h.inequalities) {
    auto [v, off] = split(a);
    hs.push_back(Halfspace{std::move(v), std::move(off)});
  }
  for (const auto& e : h.equalities) {
    auto [v, off] = split(e);
    eqs.push_back(Hyperplane{std::move(v), std::move(off)});
  }
  return polytope_from_hrep(r, hs, eqs);
}

namespace {

Rational sum_volume(const std::vector<Polytope>& bodies, const Exponent& lambda, std::size_t d) {
  Polytope sum = convex_hull({RationalVector(d)});
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (lambda[i] == 0) continue;
    sum = minkowski_sum(sum, scale(bodies[i], Rational(lambda[i])));
  }
  return euclidean_volume(sum);
}

std::vector<Rational> as_point(const Exponent& e) { return std::vector<Rational>(e.begin(), e.end()); }

}  // namespace

MinkowskiPolynomial minkowski_polynomial(const std::vector<Polytope>& bodies) {
  if (bodies.empty()) fail(ErrorKind::Validation, "minkowski_polynomial", "no bodies given");
  const std::size_t d = bodies.front().ambient_dim();
  const std::size_t s = bodies.size();
  for (std::size_t i = 0; i < s; ++i) {
    if (bodies[i].ambient_dim() != d) {
      fail(ErrorKind::DimensionMismatch, "minkowski_polynomial", "body " + std::to_string(i + 1) + " has another dimension");
    }
    if (bodies[i].empty()) fail(ErrorKind::Validation, "minkowski_polynomial", "body " + std::to_string(i + 1) + " is empty");
  }
  const auto deg = static_cast<unsigned>(d);
  auto basis = exponents_of_degree(s, deg);
  std::vector<std::vector<Rational>> points;
  std::vector<Rational> values;
  for (const auto& lambda : basis) {
    points.push_back(as_point(lambda));
    values.push_back(sum_volume(bodies, lambda, d));
  }
  auto poly = interpolate(s, basis, points, values, "minkowski_polynomial");

  const std::size_t wanted = std::max<std::size_t>(s, 3);
  std::size_t checked = 0;
  for (unsigned level = deg + 1; checked < wanted; ++level) {
    for (const auto& lambda : exponents_of_degree(s, level)) {
      if (checked == wanted) break;
      auto pt = as_point(lambda);
      if (poly(pt) != sum_volume(bodies, lambda, d)) {
        fail(ErrorKind::InternalConsistency, "minkowski_polynomial", "held-out volume mismatch at level " + std::to_string(level));
      }
      ++checked;
    }
  }
  return MinkowskiPolynomial{MultidegreePolynomial::from_polynomial(poly, deg), checked};
}

Rational mixed_volume(const std::vector<Polytope>& bodies, const Exponent& type) {
  return minkowski_polynomial(bodies).polynomial.mixed_value(type);
}

}  // namespace oklab
