#pragma once

#include "oklab/algebra.hpp"
#include "oklab/ideal_family.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace oklab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Rationals travel as "p/q" strings; integers are also accepted on input.
Json rational_to_json(const Rational& value);
Rational rational_from_json(const Json& value, const char* field);

Json staircase_to_json(const StaircaseSpec& spec);
StaircaseSpec staircase_from_json(const Json& value);

// {"r", "s", "generators": [{"exp", "deg"}]} or {"staircase": ...}.
Json algebra_to_json(const MonomialAlgebra& A);
MonomialAlgebra algebra_from_json(const Json& value);

// {"ambient_dim", "vertices": [["p/q", ...], ...]}.
Json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const Json& value);

// {"vars", "gens": [[...], ...]}.
Json ideal_to_json(const MonomialIdeal& ideal);
MonomialIdeal ideal_from_json(const Json& value);

// {"powers": ideal} | {"explicit": {"vars", "members": [ideal...]}} | {"from_body": {"vertices", "h"}}.
Json family_to_json(const GradedIdealFamily& family);
GradedIdealFamily family_from_json(const Json& value);

// Wraps a payload as {"schema_version": 1, key: payload}.
Json document(const char* key, Json payload);
// Reads `key` from a document, checking schema_version when present. A bare
// payload (no wrapper) is accepted too.
const Json& unwrap(const Json& doc, const char* key);

Json report_to_json(const MixedMultiplicityReport& report);
// Columns p,value_num,value_den,float.
std::string ladder_csv(const MixedMultiplicityReport& report);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Shortest round-trip decimal for doubles in reports.
std::string format_double(double value);

}  // namespace oklab
