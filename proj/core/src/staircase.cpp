#include "oklab/staircase.hpp"

#include "oklab/error.hpp"

#include <functional>

namespace oklab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::int64_t floor_of(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return to_int64(f, "staircase");
}

std::int64_t ceil_of(const Rational& q) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return to_int64(c, "staircase");
}

void check_dim(std::span<const std::int64_t> n, std::size_t s) {
  if (n.size() != s) fail(ErrorKind::DimensionMismatch, "staircase", "degree " + to_string(Degree(n.begin(), n.end())));
  for (auto x : n) {
    if (x < 0) fail(ErrorKind::Validation, "staircase", "negative degree " + to_string(Degree(n.begin(), n.end())));
  }
}

}  // namespace

Rational LinearForm::operator()(std::span<const std::int64_t> n) const {
  if (n.size() != coeffs.size()) fail(ErrorKind::DimensionMismatch, "LinearForm", "wrong number of arguments");
  Integer sum = 0;
  for (std::size_t i = 0; i < n.size(); ++i) sum += Integer(static_cast<long>(coeffs[i])) * static_cast<long>(n[i]);
  return make_rational(sum, static_cast<long>(denominator));
}

std::int64_t StaircaseSpec::lower_at(std::span<const std::int64_t> n) const {
  check_dim(n, s);
  return std::visit(overloaded{
                        [&](const LinearBound& b) { return ceil_of(b.form(n)); },
                        [&](const PiecewiseLinearMax& b) {
                          Rational best = b.forms.front()(n);
                          for (const auto& f : b.forms) best = std::max(best, f(n));
                          return ceil_of(best);
                        },
                        [&](const CeilSqrtQuadratic& b) {
                          Integer q = 0;
                          for (std::size_t i = 0; i < s; ++i) {
                            for (std::size_t j = 0; j < s; ++j) {
                              q += Integer(static_cast<long>(b.matrix[i][j])) * static_cast<long>(n[i]) *
                                   static_cast<long>(n[j]);
                            }
                          }
                          Integer root = sqrt(q);
                          if (root * root < q) root += 1;
                          return to_int64(root, "staircase");
                        },
                    },
                    lower);
}

std::int64_t StaircaseSpec::upper_at(std::span<const std::int64_t> n) const {
  check_dim(n, s);
  return std::visit(overloaded{
                        [&](const LinearBound& b) { return floor_of(b.form(n)); },
                        [&](const PiecewiseLinearMin& b) {
                          Rational best = b.forms.front()(n);
                          for (const auto& f : b.forms) best = std::min(best, f(n));
                          return floor_of(best);
                        },
                    },
                    upper);
}

PointSet StaircaseSpec::piece(std::span<const std::int64_t> n) const {
  const auto lo = lower_at(n);
  const auto hi = upper_at(n);
  if (lo > hi) return PointSet(1);
  return PointSet::interval(lo, hi);
}

std::uint64_t StaircaseSpec::piece_size(std::span<const std::int64_t> n) const {
  const auto lo = lower_at(n);
  const auto hi = upper_at(n);
  return lo > hi ? 0 : static_cast<std::uint64_t>(hi - lo + 1);
}

bool StaircaseSpec::is_piecewise_linear() const { return !std::holds_alternative<CeilSqrtQuadratic>(lower); }

std::vector<LinearForm> StaircaseSpec::lower_forms() const {
  if (const auto* b = std::get_if<LinearBound>(&lower)) return {b->form};
  if (const auto* b = std::get_if<PiecewiseLinearMax>(&lower)) return b->forms;
  fail(ErrorKind::Unsupported, "StaircaseSpec::lower_forms", "the lower rule is not piecewise linear");
}

std::vector<LinearForm> StaircaseSpec::upper_forms() const {
  if (const auto* b = std::get_if<LinearBound>(&upper)) return {b->form};
  return std::get<PiecewiseLinearMin>(upper).forms;
}

std::vector<Degree> degrees_up_to(std::size_t s, std::int64_t bound) {
  std::vector<Degree> out;
  Degree cur(s, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i == s) {
      out.push_back(cur);
      return;
    }
    for (std::int64_t k = 0; k <= left; ++k) {
      cur[i] = k;
      rec(i + 1, left - k);
    }
    cur[i] = 0;
  };
  rec(0, bound);
  return out;
}

std::vector<Degree> degrees_in_box(std::span<const std::int64_t> top) {
  std::vector<Degree> out;
  Degree cur(top.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == top.size()) {
      out.push_back(cur);
      return;
    }
    for (std::int64_t k = 0; k <= top[i]; ++k) {
      cur[i] = k;
      rec(i + 1);
    }
    cur[i] = 0;
  };
  rec(0);
  return out;
}

std::optional<ClosureViolation> find_closure_violation(const StaircaseSpec& spec, unsigned bound) {
  Degree zero(spec.s, 0);
  if (spec.lower_at(zero) != 0 || spec.upper_at(zero) != 0) return ClosureViolation{zero, zero};
  auto degrees = degrees_up_to(spec.s, bound);
  auto total = [](const Degree& d) {
    std::int64_t t = 0;
    for (auto x : d) t += x;
    return t;
  };
  for (const auto& m : degrees) {
    if (total(m) == 0) continue;
    const auto lm = spec.lower_at(m), um = spec.upper_at(m);
    if (lm > um) continue;
    for (const auto& n : degrees) {
      if (total(n) == 0 || total(m) + total(n) > static_cast<std::int64_t>(bound)) continue;
      const auto ln = spec.lower_at(n), un = spec.upper_at(n);
      if (ln > un) continue;
      Degree sum(spec.s);
      for (std::size_t i = 0; i < spec.s; ++i) sum[i] = m[i] + n[i];
      if (spec.lower_at(sum) > lm + ln || spec.upper_at(sum) < um + un) return ClosureViolation{m, n};
    }
  }
  return std::nullopt;
}

}  // namespace oklab
