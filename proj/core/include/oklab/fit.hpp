#pragma once

#include "oklab/point_set.hpp"
#include "oklab/polynomial.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace oklab {

struct TailFit {
  double leading = 0;      // a in a*k^q + b*k^(q-1)
  double subleading = 0;   // b
  std::int64_t k_from = 0;
  std::int64_t k_to = 0;
};

// Least-squares fit of values[k] (k = 0..size-1) against a*k^q + b*k^(q-1)
// over the upper half [k_max/2, k_max]. For q = 0 the tail mean is returned.
TailFit fit_tail(const std::vector<double>& values, unsigned q);

struct EventualPolynomial {
  Polynomial polynomial;
  std::int64_t start = 0;  // agreement verified on the simplex based at start * (1,...,1)
  std::size_t held_out_checked = 0;
};

// Exact polynomial of total degree <= degree that agrees with value(n) for
// large n. Interpolates on {base + a : |a| <= degree} with base = N0 * 1,
// checks at least three held-out points, and doubles N0 until two consecutive
// fits coincide. Throws RegularityNotReached past start_cap.
EventualPolynomial fit_eventual_polynomial(std::size_t num_vars, unsigned degree,
                                           const std::function<Integer(const Degree&)>& value, const char* operation,
                                           std::int64_t start_cap = 64);

}  // namespace oklab
