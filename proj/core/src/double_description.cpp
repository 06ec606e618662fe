#include "oklab/detail/double_description.hpp"

#include "oklab/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace oklab::detail {

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= o.words_[i];
    return out;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  LatticePoint v;
  Bits zeros;  // processed constraints tight at v
};

}  // namespace

ConeGenerators double_description(std::size_t n, const std::vector<LatticePoint>& inequalities) {
  const std::size_t m = inequalities.size();
  std::vector<LatticePoint> lineality;
  for (std::size_t i = 0; i < n; ++i) {
    LatticePoint e(n);
    e[i] = 1;
    lineality.push_back(std::move(e));
  }
  std::vector<Ray> rays;

  for (std::size_t k = 0; k < m; ++k) {
    const LatticePoint& a = inequalities[k];
    std::size_t pick = lineality.size();
    for (std::size_t i = 0; i < lineality.size(); ++i) {
      if (dot(a, lineality[i]) != 0) {
        pick = i;
        break;
      }
    }

    if (pick < lineality.size()) {
      LatticePoint l = lineality[pick];
      Integer al = dot(a, l);
      if (al < 0) {
        l = -l;
        al = -al;
      }
      std::vector<LatticePoint> next_lin;
      for (std::size_t i = 0; i < lineality.size(); ++i) {
        if (i == pick) continue;
        Integer ai = dot(a, lineality[i]);
        LatticePoint v = ai == 0 ? lineality[i] : (al * lineality[i] - ai * l).primitive();
        next_lin.push_back(std::move(v));
      }
      lineality = std::move(next_lin);
      for (auto& r : rays) {
        Integer ar = dot(a, r.v);
        if (ar != 0) r.v = (al * r.v - ar * l).primitive();
        r.zeros.set(k);
      }
      Ray fresh{l.primitive(), Bits(m)};
      for (std::size_t j = 0; j < k; ++j) fresh.zeros.set(j);
      rays.push_back(std::move(fresh));
      continue;
    }

    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0) {
        pos.push_back(i);
      } else if (val[i] < 0) {
        neg.push_back(i);
      } else {
        zero.push_back(i);
      }
    }
    if (neg.empty()) {
      for (auto i : zero) rays[i].zeros.set(k);
      continue;
    }

    // Faces of dimension lineality+2 need at least n - lineality - 2 common tight constraints.
    const std::size_t need = n >= lineality.size() + 2 ? n - lineality.size() - 2 : 0;
    std::vector<Ray> next;
    for (std::size_t ip : pos) {
      for (std::size_t in : neg) {
        Bits common = rays[ip].zeros & rays[in].zeros;
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t) {
          if (t == ip || t == in) continue;
          if (common.subset_of(rays[t].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        LatticePoint v = (val[ip] * rays[in].v - val[in] * rays[ip].v).primitive();
        common.set(k);
        next.push_back(Ray{std::move(v), std::move(common)});
      }
    }
    for (auto i : pos) next.push_back(std::move(rays[i]));
    for (auto i : zero) {
      rays[i].zeros.set(k);
      next.push_back(std::move(rays[i]));
    }
    rays = std::move(next);
  }

  ConeGenerators out;
  out.lineality = std::move(lineality);
  std::set<LatticePoint> seen;
  for (auto& r : rays) {
    if (r.v.is_zero()) continue;
    if (seen.insert(r.v).second) out.rays.push_back(std::move(r.v));
  }
  std::sort(out.rays.begin(), out.rays.end());
  return out;
}

std::vector<LatticePoint> reduce_modulo(const std::vector<LatticePoint>& vectors, const std::vector<LatticePoint>& basis) {
  if (basis.empty()) {
    std::vector<LatticePoint> out;
    for (const auto& v : vectors) out.push_back(v.primitive());
    return out;
  }
  const std::size_t k = basis.size();
  std::vector<std::vector<Rational>> gram(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = Rational(dot(basis[i], basis[j]));
  }
  std::vector<LatticePoint> out;
  for (const auto& v : vectors) {
    std::vector<Rational> rhs(k);
    for (std::size_t i = 0; i < k; ++i) rhs[i] = Rational(dot(basis[i], v));
    auto c = solve_exact(gram, rhs);
    std::vector<Rational> w(v.coords().begin(), v.coords().end());
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < w.size(); ++j) w[j] -= (*c)[i] * basis[i][j];
    }
    Integer den = 1;
    for (const auto& x : w) den = lcm(den, x.get_den());
    LatticePoint iv(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) iv[j] = Rational(w[j] * den).get_num();
    out.push_back(iv.primitive());
  }
  return out;
}

}  // namespace oklab::detail
