#include "oklab/fit.hpp"

#include "oklab/error.hpp"

#include <cmath>
#include <optional>

namespace oklab {

TailFit fit_tail(const std::vector<double>& values, unsigned q) {
  if (values.size() < 3) fail(ErrorKind::Validation, "fit_tail", "need at least three samples");
  const auto k_max = static_cast<std::int64_t>(values.size()) - 1;
  TailFit fit;
  fit.k_from = std::max<std::int64_t>(1, k_max / 2);
  fit.k_to = k_max;
  if (q == 0) {
    double sum = 0;
    for (auto k = fit.k_from; k <= k_max; ++k) sum += values[static_cast<std::size_t>(k)];
    fit.leading = sum / static_cast<double>(k_max - fit.k_from + 1);
    return fit;
  }
  // Work in x = k / k_max to keep the normal equations well conditioned.
  double s11 = 0, s12 = 0, s22 = 0, t1 = 0, t2 = 0;
  const double scale = static_cast<double>(k_max);
  for (auto k = fit.k_from; k <= k_max; ++k) {
    const double x = static_cast<double>(k) / scale;
    const double f1 = std::pow(x, q);
    const double f2 = std::pow(x, q - 1);
    const double y = values[static_cast<std::size_t>(k)];
    s11 += f1 * f1;
    s12 += f1 * f2;
    s22 += f2 * f2;
    t1 += f1 * y;
    t2 += f2 * y;
  }
  const double det = s11 * s22 - s12 * s12;
  if (det == 0) fail(ErrorKind::InternalConsistency, "fit_tail", "singular normal equations");
  const double a = (t1 * s22 - t2 * s12) / det;
  const double b = (s11 * t2 - s12 * t1) / det;
  fit.leading = a / std::pow(scale, q);
  fit.subleading = b / std::pow(scale, q - 1);
  return fit;
}

namespace {

std::vector<Rational> shifted(const Exponent& a, std::int64_t base) {
  std::vector<Rational> p;
  for (auto e : a) p.emplace_back(base + static_cast<std::int64_t>(e));
  return p;
}

Degree as_degree(const std::vector<Rational>& p) {
  Degree d;
  for (const auto& c : p) d.push_back(c.get_num().get_si());
  return d;
}

}  // namespace

EventualPolynomial fit_eventual_polynomial(std::size_t num_vars, unsigned degree,
                                           const std::function<Integer(const Degree&)>& value, const char* operation,
                                           std::int64_t start_cap) {
  const auto basis = exponents_up_to_degree(num_vars, degree);
  std::vector<Exponent> held_out;
  for (unsigned extra = degree + 1; held_out.size() < 3; ++extra) {
    auto ring = exponents_of_degree(num_vars, extra);
    held_out.insert(held_out.end(), ring.begin(), ring.end());
  }

  std::optional<EventualPolynomial> previous;
  std::string earlier_fit, last_fit;
  for (std::int64_t base = 1; base <= start_cap; base *= 2) {
    std::vector<std::vector<Rational>> points;
    std::vector<Rational> values;
    for (const auto& a : basis) {
      points.push_back(shifted(a, base));
      values.emplace_back(value(as_degree(points.back())));
    }
    auto poly = interpolate(num_vars, basis, points, values, operation);
    bool verified = true;
    for (const auto& a : held_out) {
      auto p = shifted(a, base);
      if (poly(p) != Rational(value(as_degree(p)))) {
        verified = false;
        break;
      }
    }
    earlier_fit = last_fit;
    last_fit = "N0=" + std::to_string(base) + ": " + to_string(poly) + (verified ? "" : " (held-out mismatch)");
    if (!verified) {
      previous.reset();
      continue;
    }
    if (previous && previous->polynomial == poly) return *previous;
    previous = EventualPolynomial{std::move(poly), base, held_out.size()};
  }
  fail(ErrorKind::RegularityNotReached, operation,
       "fits did not stabilize up to N0=" + std::to_string(start_cap) + "; last two fits: " + earlier_fit + "; " + last_fit);
}

}  // namespace oklab
