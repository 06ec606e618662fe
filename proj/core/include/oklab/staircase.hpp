#pragma once

#include "oklab/point_set.hpp"
#include "oklab/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace oklab {

// coeffs . n / denominator
struct LinearForm {
  std::vector<std::int64_t> coeffs;
  std::int64_t denominator = 1;

  Rational operator()(std::span<const std::int64_t> n) const;
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

// As a lower bound the value is rounded up, as an upper bound rounded down.
struct LinearBound {
  LinearForm form;
  friend bool operator==(const LinearBound&, const LinearBound&) = default;
};
struct PiecewiseLinearMax {
  std::vector<LinearForm> forms;
  friend bool operator==(const PiecewiseLinearMax&, const PiecewiseLinearMax&) = default;
};
struct PiecewiseLinearMin {
  std::vector<LinearForm> forms;
  friend bool operator==(const PiecewiseLinearMin&, const PiecewiseLinearMin&) = default;
};
// lower(n) = min { j >= 0 : j^2 >= n^T Q n } with Q symmetric positive semidefinite.
struct CeilSqrtQuadratic {
  std::vector<std::vector<std::int64_t>> matrix;
  friend bool operator==(const CeilSqrtQuadratic&, const CeilSqrtQuadratic&) = default;
};

using LowerRule = std::variant<LinearBound, PiecewiseLinearMax, CeilSqrtQuadratic>;
using UpperRule = std::variant<LinearBound, PiecewiseLinearMin>;

// Degreewise rule for a semigroup in Z x N^s:
// [S]_n = { j : lower(n) <= j <= upper(n) }.
struct StaircaseSpec {
  std::size_t s = 1;
  LowerRule lower;
  UpperRule upper;

  std::int64_t lower_at(std::span<const std::int64_t> n) const;
  std::int64_t upper_at(std::span<const std::int64_t> n) const;
  PointSet piece(std::span<const std::int64_t> n) const;
  std::uint64_t piece_size(std::span<const std::int64_t> n) const;
  // True when both rules are (piecewise) linear, so that the closed cone is polyhedral.
  bool is_piecewise_linear() const;
  // Real-valued limits of the rules, as linear forms, for piecewise-linear specs.
  std::vector<LinearForm> lower_forms() const;
  std::vector<LinearForm> upper_forms() const;

  friend bool operator==(const StaircaseSpec&, const StaircaseSpec&) = default;
};

// First degree pair (m, n) with 1 <= |m|, |n| and |m| + |n| <= bound for which
// [S]_m + [S]_n is not contained in [S]_{m+n}, or nullopt. Also requires [S]_0 = {0}.
struct ClosureViolation {
  Degree m;
  Degree n;
};
std::optional<ClosureViolation> find_closure_violation(const StaircaseSpec& spec, unsigned bound);

// All degree vectors in N^s with total degree <= bound (bound >= 0), in lex order.
std::vector<Degree> degrees_up_to(std::size_t s, std::int64_t bound);
// All degree vectors in the box 0 <= n <= top.
std::vector<Degree> degrees_in_box(std::span<const std::int64_t> top);

}  // namespace oklab
