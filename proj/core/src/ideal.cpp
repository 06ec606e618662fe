#include "oklab/ideal.hpp"

#include "oklab/error.hpp"
#include "oklab/memory_guard.hpp"
#include "oklab/polytope.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace oklab {

namespace {

bool divides(const Exponent& g, const Exponent& a) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] > a[i]) return false;
  }
  return true;
}

std::vector<Exponent> minimalize(std::vector<Exponent> gens) {
  std::sort(gens.begin(), gens.end(), [](const Exponent& a, const Exponent& b) {
    const auto da = total_degree(a), db = total_degree(b);
    return da != db ? da < db : a < b;
  });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Exponent> kept;
  for (auto& g : gens) {
    if (std::none_of(kept.begin(), kept.end(), [&](const Exponent& h) { return divides(h, g); })) kept.push_back(std::move(g));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

MonomialIdeal::MonomialIdeal(std::size_t num_vars, std::vector<Exponent> generators) : num_vars_(num_vars) {
  for (const auto& g : generators) {
    if (g.size() != num_vars) {
      fail(ErrorKind::DimensionMismatch, "MonomialIdeal", "generator has " + std::to_string(g.size()) + " exponents, expected " +
                                                              std::to_string(num_vars));
    }
  }
  gens_ = minimalize(std::move(generators));
}

MonomialIdeal MonomialIdeal::unit(std::size_t num_vars) { return MonomialIdeal(num_vars, {Exponent(num_vars, 0)}); }

MonomialIdeal MonomialIdeal::maximal_power(std::size_t num_vars, unsigned n) {
  return MonomialIdeal(num_vars, exponents_of_degree(num_vars, n));
}

std::optional<unsigned> MonomialIdeal::homogeneous_degree() const {
  if (gens_.empty()) return std::nullopt;
  const auto d = total_degree(gens_.front());
  for (const auto& g : gens_) {
    if (total_degree(g) != d) return std::nullopt;
  }
  return d;
}

unsigned MonomialIdeal::max_generator_degree() const {
  unsigned best = 0;
  for (const auto& g : gens_) best = std::max(best, total_degree(g));
  return best;
}

bool MonomialIdeal::contains(const Exponent& monomial) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const Exponent& g) { return divides(g, monomial); });
}

bool MonomialIdeal::contains(const MonomialIdeal& other) const {
  return std::all_of(other.gens_.begin(), other.gens_.end(), [&](const Exponent& g) { return contains(g); });
}

std::string to_string(const MonomialIdeal& ideal) {
  std::ostringstream out;
  out << "(";
  for (std::size_t k = 0; k < ideal.min_gens().size(); ++k) {
    if (k) out << ", ";
    const auto& g = ideal.min_gens()[k];
    bool any = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] == 0) continue;
      if (any) out << "*";
      out << "x" << i + 1;
      if (g[i] > 1) out << "^" << g[i];
      any = true;
    }
    if (!any) out << "1";
  }
  out << ")";
  return out.str();
}

MonomialIdeal product(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.num_vars() != b.num_vars()) fail(ErrorKind::DimensionMismatch, "product", "ideals live in different rings");
  std::vector<Exponent> gens;
  gens.reserve(a.min_gens().size() * b.min_gens().size());
  for (const auto& g : a.min_gens()) {
    for (const auto& h : b.min_gens()) {
      Exponent e(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) e[i] = g[i] + h[i];
      gens.push_back(std::move(e));
    }
  }
  return MonomialIdeal(a.num_vars(), std::move(gens));
}

MonomialIdeal power(const MonomialIdeal& ideal, unsigned n) {
  MonomialIdeal out = MonomialIdeal::unit(ideal.num_vars());
  for (unsigned k = 0; k < n; ++k) out = product(out, ideal);
  return out;
}

QuotientDim quotient_dim(const MonomialIdeal& num, const MonomialIdeal& den, unsigned degree_cap) {
  constexpr const char* op = "quotient_dim";
  const std::size_t d = num.num_vars();
  if (den.num_vars() != d) fail(ErrorKind::DimensionMismatch, op, "ideals live in different rings");
  if (!num.contains(den)) fail(ErrorKind::Validation, op, "denominator " + to_string(den) + " is not inside " + to_string(num));
  if (num.is_zero()) return {};
  if (den.is_zero()) fail(ErrorKind::Validation, op, "zero denominator: the quotient is infinite");
  if (d == 0) return {};

  // Over the grid of the first d-1 exponents, membership is upward closed in the
  // last one: f(c) is the least last exponent of an ideal monomial above c.
  const std::size_t g = d - 1;
  std::vector<std::size_t> box(g, 0), stride(g, 1);
  for (const auto* ideal : {&num, &den}) {
    for (const auto& e : ideal->min_gens()) {
      for (std::size_t i = 0; i < g; ++i) box[i] = std::max<std::size_t>(box[i], e[i]);
    }
  }
  std::size_t cells = 1;
  for (std::size_t i = 0; i < g; ++i) {
    stride[i] = cells;
    cells *= box[i] + 1;
  }
  require_memory(cells * 2 * sizeof(std::int64_t), op, "grid of " + std::to_string(cells) + " cells");

  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
  auto staircase = [&](const MonomialIdeal& ideal) {
    std::vector<std::int64_t> f(cells, inf);
    for (const auto& e : ideal.min_gens()) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < g; ++i) idx += e[i] * stride[i];
      f[idx] = std::min<std::int64_t>(f[idx], e[g]);
    }
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t idx = 0; idx < cells; ++idx) {
        if ((idx / stride[i]) % (box[i] + 1) != 0) f[idx] = std::min(f[idx], f[idx - stride[i]]);
      }
    }
    return f;
  };
  const auto f_num = staircase(num);
  const auto f_den = staircase(den);

  Integer count = 0;
  std::int64_t top_degree = -1;
  for (std::size_t idx = 0; idx < cells; ++idx) {
    if (f_num[idx] == inf) continue;
    std::int64_t coord_sum = 0;
    bool on_edge = false;
    for (std::size_t i = 0; i < g; ++i) {
      const auto c = (idx / stride[i]) % (box[i] + 1);
      coord_sum += static_cast<std::int64_t>(c);
      on_edge = on_edge || c == box[i];
    }
    if (f_den[idx] == inf || (on_edge && f_den[idx] > f_num[idx])) {
      fail(ErrorKind::Validation, op, to_string(den) + " is not cofinal in " + to_string(num) + ": the quotient is infinite");
    }
    const auto diff = f_den[idx] - f_num[idx];
    if (diff <= 0) continue;
    count += static_cast<unsigned long>(diff);
    top_degree = std::max(top_degree, coord_sum + f_den[idx] - 1);
  }
  QuotientDim out{count, 0};
  if (top_degree >= 0) {
    unsigned low = std::numeric_limits<unsigned>::max();
    for (const auto& e : num.min_gens()) low = std::min(low, total_degree(e));
    out.certificate = static_cast<unsigned>(top_degree - low + 1);
    if (out.certificate > degree_cap) {
      fail(ErrorKind::ResourceLimit, op, "cofinality certificate c = " + std::to_string(out.certificate) +
                                             " exceeds the cap " + std::to_string(degree_cap));
    }
  }
  return out;
}

std::size_t analytic_spread(const MonomialIdeal& ideal) {
  if (!ideal.homogeneous_degree()) {
    fail(ErrorKind::Unsupported, "analytic_spread", to_string(ideal) + " is not generated in a single degree");
  }
  std::vector<RationalVector> pts;
  for (const auto& g : ideal.min_gens()) {
    RationalVector p(ideal.num_vars());
    for (std::size_t i = 0; i < g.size(); ++i) p[i] = g[i];
    pts.push_back(std::move(p));
  }
  return 1 + static_cast<std::size_t>(convex_hull(pts, ideal.num_vars()).affine_dim());
}

}  // namespace oklab
