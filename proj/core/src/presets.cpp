#include "oklab/presets.hpp"

#include "oklab/error.hpp"

namespace oklab {

namespace {

// Kept as JSON text so the embedded objects are exactly what the format reference shows.
struct Entry {
  const char* name;
  const char* text;
};

constexpr Entry kPresets[] = {
    // [A]_n = { u^j : ceil(2 sqrt(n1^2 + n2^2)) <= j <= 2(n1 + n2) }
    {"nonpoly", R"({"staircase": {"s": 2,
        "lower": {"kind": "ceil_sqrt_quadratic", "matrix": [[4, 0], [0, 4]]},
        "upper": {"kind": "linear", "coeffs": [2, 2], "den": 1}}})"},
    // [A]_n = { u^j : 0 <= j <= min(n1, n2) }
    {"min", R"({"staircase": {"s": 2,
        "lower": {"kind": "linear", "coeffs": [0, 0], "den": 1},
        "upper": {"kind": "pl_min", "forms": [{"coeffs": [1, 0], "den": 1}, {"coeffs": [0, 1], "den": 1}]}}})"},
    // [A]_n = { u^j : 0 <= j <= min(2 n1, n1 + n2, 2 n2) }
    {"concave-pl", R"({"staircase": {"s": 2,
        "lower": {"kind": "linear", "coeffs": [0, 0], "den": 1},
        "upper": {"kind": "pl_min", "forms": [{"coeffs": [2, 0], "den": 1}, {"coeffs": [1, 1], "den": 1},
                                              {"coeffs": [0, 2], "den": 1}]}}})"},
    // k[t1, x1 t1, t2, x2 t2]
    {"segre", R"({"r": 2, "s": 2, "generators": [
        {"exp": [0, 0], "deg": [1, 0]}, {"exp": [1, 0], "deg": [1, 0]},
        {"exp": [0, 0], "deg": [0, 1]}, {"exp": [0, 1], "deg": [0, 1]}]})"},
    // [A]_n = { u^j : 0 <= j <= floor(89 n / 55) }
    {"golden", R"({"staircase": {"s": 1,
        "lower": {"kind": "linear", "coeffs": [0], "den": 1},
        "upper": {"kind": "linear", "coeffs": [89], "den": 55}}})"},
};

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : kPresets) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

Json preset(std::string_view name) {
  for (const auto& e : kPresets) {
    if (name == e.name) return document("algebra", Json::parse(e.text));
  }
  std::string valid;
  for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
  fail(ErrorKind::Validation, "preset", "unknown preset \"" + std::string(name) + "\"; valid names: " + valid);
}

MonomialAlgebra preset_algebra(std::string_view name) { return algebra_from_json(unwrap(preset(name), "algebra")); }

}  // namespace oklab
