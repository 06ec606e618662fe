#include "oklab/io.hpp"

#include "oklab/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace oklab {

namespace {

constexpr const char* kOp = "json";

[[noreturn]] void bad(const std::string& message) { fail(ErrorKind::Validation, kOp, message); }

const Json& field(const Json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) bad(std::string("missing field \"") + name + "\"");
  return obj.at(name);
}

std::int64_t as_int(const Json& v, const char* name) {
  if (!v.is_number_integer()) bad(std::string("field \"") + name + "\" must be an integer, got " + v.dump());
  return v.get<std::int64_t>();
}

std::vector<std::int64_t> as_ints(const Json& v, const char* name) {
  if (!v.is_array()) bad(std::string("field \"") + name + "\" must be an array, got " + v.dump());
  std::vector<std::int64_t> out;
  for (const auto& x : v) out.push_back(as_int(x, name));
  return out;
}

Integer as_integer(const Json& v, const char* name) {
  if (v.is_number_integer()) return Integer(std::to_string(v.get<std::int64_t>()));
  if (v.is_string()) {
    try {
      return Integer(v.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  bad(std::string("field \"") + name + "\" must be an integer, got " + v.dump());
}

Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Json form_to_json(const LinearForm& f) { return Json{{"coeffs", f.coeffs}, {"den", f.denominator}}; }

LinearForm form_from_json(const Json& v) {
  LinearForm f{as_ints(field(v, "coeffs"), "coeffs"), 1};
  if (v.contains("den")) f.denominator = as_int(v.at("den"), "den");
  if (f.denominator < 1) bad("linear form denominator must be positive");
  return f;
}

Json forms_to_json(const std::vector<LinearForm>& forms) {
  Json out = Json::array();
  for (const auto& f : forms) out.push_back(form_to_json(f));
  return out;
}

std::vector<LinearForm> forms_from_json(const Json& v) {
  if (!v.is_array() || v.empty()) bad("\"forms\" must be a nonempty array");
  std::vector<LinearForm> out;
  for (const auto& f : v) out.push_back(form_from_json(f));
  return out;
}

template <class Rule>
Json rule_to_json(const Rule& rule) {
  return std::visit(
      [](const auto& r) -> Json {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, LinearBound>) {
          Json j = form_to_json(r.form);
          j["kind"] = "linear";
          return j;
        } else if constexpr (std::is_same_v<T, PiecewiseLinearMax>) {
          return Json{{"kind", "pl_max"}, {"forms", forms_to_json(r.forms)}};
        } else if constexpr (std::is_same_v<T, PiecewiseLinearMin>) {
          return Json{{"kind", "pl_min"}, {"forms", forms_to_json(r.forms)}};
        } else {
          return Json{{"kind", "ceil_sqrt_quadratic"}, {"matrix", r.matrix}};
        }
      },
      rule);
}

LowerRule lower_from_json(const Json& v) {
  const auto kind = field(v, "kind").get<std::string>();
  if (kind == "linear") return LinearBound{form_from_json(v)};
  if (kind == "pl_max") return PiecewiseLinearMax{forms_from_json(field(v, "forms"))};
  if (kind == "ceil_sqrt_quadratic") {
    CeilSqrtQuadratic q;
    for (const auto& row : field(v, "matrix")) q.matrix.push_back(as_ints(row, "matrix"));
    return q;
  }
  bad("unknown lower rule kind \"" + kind + "\" (expected linear, pl_max, ceil_sqrt_quadratic)");
}

UpperRule upper_from_json(const Json& v) {
  const auto kind = field(v, "kind").get<std::string>();
  if (kind == "linear") return LinearBound{form_from_json(v)};
  if (kind == "pl_min") return PiecewiseLinearMin{forms_from_json(field(v, "forms"))};
  bad("unknown upper rule kind \"" + kind + "\" (expected linear, pl_min)");
}

Json semigroup_to_json(const GradedSemigroup& S) {
  switch (S.source()) {
    case SemigroupSource::Generators: {
      Json gens = Json::array();
      for (const auto& g : S.generators()) {
        Json exp = Json::array(), deg = Json::array();
        for (std::size_t i = 0; i < S.r(); ++i) exp.push_back(integer_to_json(g[i]));
        for (std::size_t j = 0; j < S.s(); ++j) deg.push_back(integer_to_json(g[S.r() + j]));
        gens.push_back(Json{{"exp", exp}, {"deg", deg}});
      }
      return Json{{"r", S.r()}, {"s", S.s()}, {"generators", gens}};
    }
    case SemigroupSource::Staircase:
      return Json{{"staircase", staircase_to_json(S.staircase())}};
    case SemigroupSource::Restriction:
      return Json{{"restriction", Json{{"parent", semigroup_to_json(S.parent())}, {"direction", S.direction()}}}};
  }
  bad("unknown semigroup source");
}

GradedSemigroup semigroup_from_json(const Json& v) {
  if (v.contains("staircase")) return GradedSemigroup::from_staircase(staircase_from_json(v.at("staircase")));
  if (v.contains("restriction")) {
    const auto& r = v.at("restriction");
    return GradedSemigroup::restriction(semigroup_from_json(field(r, "parent")), as_ints(field(r, "direction"), "direction"));
  }
  const auto r = static_cast<std::size_t>(as_int(field(v, "r"), "r"));
  const auto s = static_cast<std::size_t>(as_int(field(v, "s"), "s"));
  std::vector<LatticePoint> gens;
  for (const auto& g : field(v, "generators")) {
    const auto& exp = field(g, "exp");
    const auto& deg = field(g, "deg");
    if (exp.size() != r || deg.size() != s) {
      fail(ErrorKind::DimensionMismatch, kOp, "generator " + g.dump() + " needs r = " + std::to_string(r) +
                                                  " exponents and s = " + std::to_string(s) + " degrees");
    }
    std::vector<Integer> coords;
    for (const auto& x : exp) coords.push_back(as_integer(x, "exp"));
    for (const auto& x : deg) coords.push_back(as_integer(x, "deg"));
    gens.emplace_back(std::move(coords));
  }
  return GradedSemigroup::from_generators(r, s, std::move(gens));
}

Json vertex_list(const std::vector<RationalVector>& vertices) {
  Json out = Json::array();
  for (const auto& v : vertices) {
    Json row = Json::array();
    for (const auto& c : v.coords()) row.push_back(rational_to_json(c));
    out.push_back(row);
  }
  return out;
}

std::vector<RationalVector> vertices_from_json(const Json& v) {
  if (!v.is_array()) bad("\"vertices\" must be an array of points");
  std::vector<RationalVector> out;
  for (const auto& row : v) {
    if (!row.is_array()) bad("vertex " + row.dump() + " must be an array");
    RationalVector p(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) p[i] = rational_from_json(row[i], "vertices");
    if (!out.empty() && p.ambient_dim() != out.front().ambient_dim()) {
      fail(ErrorKind::DimensionMismatch, kOp, "vertex " + row.dump() + " has the wrong dimension");
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

Json rational_to_json(const Rational& value) { return format_rational(value); }

Rational rational_from_json(const Json& value, const char* name) {
  if (value.is_number_integer()) return Rational(value.get<long>());
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const Error&) {
    }
  }
  bad(std::string("field \"") + name + "\" must be an integer or a \"p/q\" string, got " + value.dump());
}

Json staircase_to_json(const StaircaseSpec& spec) {
  return Json{{"s", spec.s}, {"lower", rule_to_json(spec.lower)}, {"upper", rule_to_json(spec.upper)}};
}

StaircaseSpec staircase_from_json(const Json& value) {
  StaircaseSpec spec;
  spec.s = static_cast<std::size_t>(as_int(field(value, "s"), "s"));
  spec.lower = lower_from_json(field(value, "lower"));
  spec.upper = upper_from_json(field(value, "upper"));
  return spec;
}

Json algebra_to_json(const MonomialAlgebra& A) {
  Json out = semigroup_to_json(A.semigroup());
  if (A.generation_bound() != 8) out["generation_bound"] = A.generation_bound();
  return out;
}

MonomialAlgebra algebra_from_json(const Json& value) {
  unsigned bound = 8;
  if (value.contains("generation_bound")) bound = static_cast<unsigned>(as_int(value.at("generation_bound"), "generation_bound"));
  return MonomialAlgebra(semigroup_from_json(value), bound);
}

Json polytope_to_json(const Polytope& p) {
  return Json{{"ambient_dim", p.ambient_dim()}, {"vertices", vertex_list(p.vertices())}};
}

Polytope polytope_from_json(const Json& value) {
  auto vertices = vertices_from_json(field(value, "vertices"));
  std::size_t dim = value.contains("ambient_dim") ? static_cast<std::size_t>(as_int(value.at("ambient_dim"), "ambient_dim"))
                                                  : (vertices.empty() ? 0 : vertices.front().ambient_dim());
  if (!vertices.empty() && vertices.front().ambient_dim() != dim) {
    fail(ErrorKind::DimensionMismatch, kOp, "vertices do not live in R^" + std::to_string(dim));
  }
  return convex_hull(vertices, dim);
}

Json ideal_to_json(const MonomialIdeal& ideal) {
  Json gens = Json::array();
  for (const auto& g : ideal.min_gens()) gens.push_back(g);
  return Json{{"vars", ideal.num_vars()}, {"gens", gens}};
}

MonomialIdeal ideal_from_json(const Json& value) {
  const auto vars = as_int(field(value, "vars"), "vars");
  if (vars < 1) bad("\"vars\" must be positive");
  std::vector<Exponent> gens;
  for (const auto& g : field(value, "gens")) {
    Exponent e;
    for (auto x : as_ints(g, "gens")) {
      if (x < 0) bad("exponent " + g.dump() + " has a negative entry");
      e.push_back(static_cast<unsigned>(x));
    }
    gens.push_back(std::move(e));
  }
  return MonomialIdeal(static_cast<std::size_t>(vars), std::move(gens));
}

Json family_to_json(const GradedIdealFamily& family) {
  return std::visit(
      [&](const auto& rule) -> Json {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, PowersRule>) {
          return Json{{"powers", ideal_to_json(rule.base)}};
        } else if constexpr (std::is_same_v<T, ExplicitRule>) {
          Json members = Json::array();
          for (const auto& m : rule.members) members.push_back(ideal_to_json(m));
          return Json{{"explicit", Json{{"vars", family.num_vars()}, {"members", members}}}};
        } else {
          return Json{{"from_body", Json{{"vertices", vertex_list(rule.body.vertices())},
                                         {"ambient_dim", rule.body.ambient_dim()},
                                         {"h", rule.h}}}};
        }
      },
      family.rule());
}

GradedIdealFamily family_from_json(const Json& value) {
  if (value.contains("powers")) return GradedIdealFamily::powers(ideal_from_json(value.at("powers")));
  if (value.contains("explicit")) {
    const auto& e = value.at("explicit");
    std::vector<MonomialIdeal> members;
    for (const auto& m : field(e, "members")) members.push_back(ideal_from_json(m));
    return GradedIdealFamily::explicit_members(static_cast<std::size_t>(as_int(field(e, "vars"), "vars")), std::move(members));
  }
  if (value.contains("from_body")) {
    const auto& b = value.at("from_body");
    auto body = polytope_from_json(b);
    const auto h = b.contains("h") ? as_int(b.at("h"), "h") : minimal_homogenization(body);
    return GradedIdealFamily::from_body(std::move(body), h);
  }
  bad("family needs one of \"powers\", \"explicit\", \"from_body\"");
}

Json document(const char* key, Json payload) { return Json{{"schema_version", kSchemaVersion}, {key, std::move(payload)}}; }

const Json& unwrap(const Json& doc, const char* key) {
  if (doc.is_object() && doc.contains("schema_version")) {
    if (!doc.at("schema_version").is_number_integer() || doc.at("schema_version").get<int>() != kSchemaVersion) {
      bad("unsupported schema_version " + doc.at("schema_version").dump());
    }
  }
  if (doc.is_object() && doc.contains(key)) return doc.at(key);
  return doc;
}

Json report_to_json(const MixedMultiplicityReport& report) {
  Json ladder = Json::array();
  for (const auto& step : report.ladder) ladder.push_back(Json{{"p", step.p}, {"value", rational_to_json(step.value)}});
  Json out{{"type", report.d},
           {"provenance", report.provenance == Provenance::Exact ? "exact" : "fujita-ladder"},
           {"value", report.value},
           {"positive", report.positive},
           {"ladder", ladder}};
  if (report.exact) out["exact"] = rational_to_json(*report.exact);
  return out;
}

std::string ladder_csv(const MixedMultiplicityReport& report) {
  std::ostringstream out;
  out << "p,value_num,value_den,float\n";
  for (const auto& step : report.ladder) {
    out << step.p << ',' << step.value.get_num().get_str() << ',' << step.value.get_den().get_str() << ','
        << format_double(to_double(step.value)) << '\n';
  }
  return out.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "read", "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Validation, "read", path + " is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "write", "cannot open " + path + " for writing");
  out << text;
  if (!out) fail(ErrorKind::Io, "write", "failed writing " + path);
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return std::to_string(value);
  return std::string(buf, end);
}

}  // namespace oklab
