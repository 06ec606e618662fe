#include "cli.hpp"

#include "oklab/algebra.hpp"
#include "oklab/error.hpp"
#include "oklab/ideal_family.hpp"
#include "oklab/io.hpp"
#include "oklab/parallel.hpp"
#include "oklab/presets.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace oklab::cli {

namespace {

enum class Format { Table, Json, Csv };

struct Options {
  std::string input;
  std::string output;
  std::string example;
  Format format = Format::Table;
  std::int64_t n_max = 500;
  std::string p_schedule = "1,2,4,8,16";
  unsigned bound = 8;
  unsigned threads = 1;
  std::string x;
  std::string type;
  std::string n;
  std::string bodies;
  std::string method = "auto";
};

// Result of one command: the report plus the exit status it implies.
struct Outcome {
  Json report;
  int status = 0;
};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::vector<Rational> rationals(const std::string& text, const char* flag) {
  if (text.empty()) fail(ErrorKind::Validation, flag, "missing value");
  std::vector<Rational> out;
  for (const auto& item : split(text)) out.push_back(parse_rational(item));
  return out;
}

std::vector<std::int64_t> integers(const std::string& text, const char* flag) {
  std::vector<std::int64_t> out;
  for (const auto& r : rationals(text, flag)) {
    if (r.get_den() != 1) fail(ErrorKind::Validation, flag, "expected integers, got " + format_rational(r));
    out.push_back(to_int64(r.get_num(), flag));
  }
  return out;
}

std::vector<std::int64_t> nonnegative(const std::string& text, const char* flag) {
  auto out = integers(text, flag);
  for (auto v : out) {
    if (v < 0) fail(ErrorKind::Validation, flag, "entries must be nonnegative, got " + std::to_string(v));
  }
  return out;
}

Exponent exponent(const std::string& text, const char* flag) {
  Exponent e;
  for (auto v : nonnegative(text, flag)) e.push_back(static_cast<unsigned>(v));
  return e;
}

Json load_document(const Options& o) {
  if (!o.example.empty()) return preset(o.example);
  if (o.input.empty()) fail(ErrorKind::Validation, "input", "pass --input (path or inline JSON) or --example");
  if (o.input.front() == '{') {
    try {
      return Json::parse(o.input);
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorKind::Validation, "input", std::string("inline JSON does not parse: ") + e.what());
    }
  }
  return read_json_file(o.input);
}

bool is_family_document(const Json& doc) { return doc.is_object() && doc.contains("families"); }

MonomialAlgebra load_algebra(const Options& o) {
  const auto doc = load_document(o);
  if (is_family_document(doc)) fail(ErrorKind::Validation, "input", "this command expects an algebra document");
  return algebra_from_json(unwrap(doc, "algebra"));
}

struct Families {
  GradedIdealFamily I;
  std::vector<GradedIdealFamily> J;
};

Families load_families(const Json& doc) {
  const auto& f = unwrap(doc, "families");
  if (!f.contains("J") || !f.at("J").is_array()) fail(ErrorKind::Validation, "input", "\"families\" needs an array \"J\"");
  std::vector<GradedIdealFamily> J;
  for (const auto& j : f.at("J")) J.push_back(family_from_json(j));
  if (J.empty()) fail(ErrorKind::Validation, "input", "\"J\" is empty");
  auto I = f.contains("I") ? family_from_json(f.at("I")) : GradedIdealFamily::m_adic(J.front().num_vars());
  return {std::move(I), std::move(J)};
}

std::vector<std::int64_t> schedule(const Options& o) {
  auto p = integers(o.p_schedule, "--pschedule");
  if (p.empty()) fail(ErrorKind::Validation, "--pschedule", "empty schedule");
  return p;
}

Json axes_json(const std::optional<std::vector<std::size_t>>& axes) {
  if (!axes) return nullptr;
  return *axes;
}

Json checks_json(const std::vector<SubsetInequality>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) out.push_back(Json{{"J", c.axes}, {"lhs", c.lhs}, {"rhs", c.rhs}});
  return out;
}

Json degree_json(const std::vector<std::int64_t>& d) { return d; }

Json rationals_json(const RationalVector& x) {
  Json out = Json::array();
  for (const auto& c : x.coords()) out.push_back(rational_to_json(c));
  return out;
}

// Commands -------------------------------------------------------------------

Outcome hilbert(const Options& o) {
  auto A = load_algebra(o);
  if (!o.n.empty()) {
    auto n = nonnegative(o.n, "--n");
    return {Json{{"n", degree_json(n)}, {"dim", hilbert_function(A, n)}}};
  }
  auto hp = hilbert_polynomial(A);
  Json e = Json::array();
  for (const auto& d : exponents_of_degree(A.s(), static_cast<unsigned>(hp.q))) {
    e.push_back(Json{{"d", d}, {"e", rational_to_json(hp.leading.mixed_value(d))}});
  }
  return {Json{{"polynomial", to_string(hp.full)},
               {"q", hp.q},
               {"start", hp.start},
               {"held_out_checked", hp.held_out_checked},
               {"mixed_multiplicities", e}}};
}

Outcome volume_fn(const Options& o) {
  auto A = load_algebra(o);
  const auto xs = rationals(o.x, "--x");
  RationalVector x(xs);
  if (o.method == "count") {
    Degree n = integers(o.x, "--x");
    const double value = volume_fn_count(A, n, o.n_max);
    return {Json{{"x", rationals_json(x)}, {"method", "count"}, {"value", value}, {"n_max", o.n_max}}};
  }
  auto fv = volume_fn_fiber(A, x, o.n_max);
  Json report{{"x", rationals_json(x)}, {"method", fv.estimate ? "count" : "fiber"}, {"q", fv.q}};
  if (fv.estimate) {
    report["value"] = fv.approx;
    report["n_max"] = o.n_max;
  } else {
    report["value"] = rational_to_json(fv.value);
    report["float"] = fv.approx;
    report["ind"] = to_string(fv.ind);
  }
  return {report};
}

Outcome no_body(const Options& o) {
  auto A = load_algebra(o);
  if (o.n.empty()) {
    auto cone = global_no_cone(A);
    Json rays = Json::array();
    for (const auto& r : cone.cone.rays()) rays.push_back(to_string(r));
    return {Json{{"rays", rays}, {"inner_approximation", cone.inner_approximation}}};
  }
  auto n = nonnegative(o.n, "--n");
  auto body = okounkov_body(veronese(A, n).semigroup(), A.generation_bound());
  return {Json{{"n", degree_json(n)},
               {"body", polytope_to_json(scale(body.body, Rational(1) / Rational(body.height)))},
               {"inner_approximation", body.inner_approximation}}};
}

Outcome fiber(const Options& o) {
  auto A = load_algebra(o);
  auto n = nonnegative(o.n, "--n");
  auto check = fiber_theorem_check(A, n);
  return {Json{{"n", degree_json(n)},
               {"fiber", polytope_to_json(check.fiber)},
               {"veronese_body", polytope_to_json(check.veronese_body)},
               {"status", check.equal ? "EQUAL" : "DIFFER"}},
          check.equal ? 0 : 4};
}

Outcome mixed_mult(const Options& o) {
  const auto doc = load_document(o);
  const auto type = exponent(o.type, "--type");
  if (is_family_document(doc)) {
    auto f = load_families(doc);
    if (type.empty()) fail(ErrorKind::Validation, "--type", "expected d0,d1,...");
    Exponent d(type.begin() + 1, type.end());
    return {report_to_json(family_mixed_multiplicities(f.I, f.J, type.front(), d, schedule(o)))};
  }
  auto A = algebra_from_json(unwrap(doc, "algebra"));
  return {report_to_json(mixed_multiplicities(A, type, schedule(o), o.bound))};
}

Outcome positivity_cmd(const Options& o) {
  const auto doc = load_document(o);
  const auto type = exponent(o.type, "--type");
  if (is_family_document(doc)) {
    auto f = load_families(doc);
    if (type.empty()) fail(ErrorKind::Validation, "--type", "expected d0,d1,...");
    auto r = family_positivity(f.J, type.front(), Exponent(type.begin() + 1, type.end()));
    return {Json{{"positive", r.positive}, {"violated", axes_json(r.violated)}, {"p_used", r.p_used}, {"checks", checks_json(r.checks)}}};
  }
  auto A = algebra_from_json(unwrap(doc, "algebra"));
  auto r = positivity(A, type, o.bound);
  return {Json{{"positive", r.positive}, {"violated", axes_json(r.violated)}, {"checks", checks_json(r.checks)}}};
}

Outcome ideal_family(const Options& o) {
  auto f = load_families(load_document(o));
  Json closure = Json::array();
  for (const auto& family : f.J) {
    auto c = check_family(family, o.bound);
    Json entry{{"closed", c.closed}, {"growth_ok", c.growth_ok}};
    if (c.closure_failure) entry["closure_failure"] = {c.closure_failure->first, c.closure_failure->second};
    if (c.growth_failure) entry["growth_failure"] = *c.growth_failure;
    closure.push_back(entry);
  }
  Json report{{"num_vars", f.I.num_vars()}, {"closure", closure}};
  if (!o.n.empty()) {
    auto n = nonnegative(o.n, "--n");
    if (n.size() != f.J.size() + 1) fail(ErrorKind::DimensionMismatch, "--n", "expected n0 plus one entry per family in J");
    Degree rest(n.begin() + 1, n.end());
    report["n"] = degree_json(n);
    report["quotient_dim"] = family_quotient_dim(f.I, f.J, n.front(), rest).get_str();
    report["limit"] = bhattacharya_limit(f.I, f.J, n.front(), rest, o.n_max);
    report["n_max"] = o.n_max;
  }
  return {report};
}

Outcome mixed_volume_cmd(const Options& o) {
  if (o.bodies.empty()) fail(ErrorKind::Validation, "--bodies", "expected comma-separated polytope files");
  std::vector<Polytope> bodies;
  for (const auto& path : split(o.bodies)) bodies.push_back(polytope_from_json(unwrap(read_json_file(path), "polytope")));
  auto bridge = mixed_volume_via_ideals(bodies, exponent(o.type, "--type"), schedule(o));
  constexpr double tolerance = 0.05;
  const bool agree = bridge.rel_diff <= tolerance && bridge.geometric_positive == bridge.ideal_positivity.positive;
  return {Json{{"geometric", rational_to_json(bridge.geometric_side)},
               {"ideal", bridge.ideal_side},
               {"rel_diff", bridge.rel_diff},
               {"ladder", report_to_json(bridge.ideal_report)["ladder"]},
               {"geometric_positive", bridge.geometric_positive},
               {"geometric_violated", axes_json(bridge.geometric_violated)},
               {"ideal_positive", bridge.ideal_positivity.positive},
               {"ideal_violated", axes_json(bridge.ideal_positivity.violated)},
               {"status", agree ? "AGREE" : "DISAGREE"}},
          agree ? 0 : 4};
}

Outcome verify(const std::string& name, const Options& o) {
  auto A = preset_algebra(name);
  Json report{{"example", name}};
  bool pass = false;
  auto ray = [&](std::vector<std::int64_t> fallback) {
    auto n = o.n.empty() ? fallback : nonnegative(o.n, "--n");
    if (n.size() != A.s()) fail(ErrorKind::DimensionMismatch, "--n", "expected " + std::to_string(A.s()) + " entries");
    report["n"] = degree_json(n);
    return n;
  };
  if (name == "nonpoly") {
    auto n = ray({3, 4});
    const double a = static_cast<double>(n[0]), b = static_cast<double>(n[1]);
    const double target = 2 * (a + b) - 2 * std::sqrt(a * a + b * b);
    const double estimate = volume_fn_count(A, n, o.n_max);
    constexpr double tolerance = 0.02;
    pass = std::abs(estimate - target) <= tolerance * std::max(target, 1.0);
    report.update(Json{{"estimate", estimate}, {"target", target}, {"n_max", o.n_max}, {"tolerance", tolerance}});
  } else if (name == "min" || name == "concave-pl") {
    auto n = ray({2, 3});
    RationalVector x(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) x[i] = n[i];
    // Closed forms of the staircase's upper rule.
    const auto target = name == "min" ? std::min(n[0], n[1]) : std::min({2 * n[0], n[0] + n[1], 2 * n[1]});
    auto fv = volume_fn_fiber(A, x);
    auto theorem = fiber_theorem_check(A, n);
    pass = fv.value == target && theorem.equal;
    report.update(Json{{"fiber_volume", rational_to_json(fv.value)}, {"target", target}, {"fiber_theorem", theorem.equal}});
  } else if (name == "segre") {
    auto hp = hilbert_polynomial(A);
    const Polynomial expected(2, {{{1, 1}, 1}, {{1, 0}, 1}, {{0, 1}, 1}, {{0, 0}, 1}});
    pass = hp.full == expected && hp.leading.mixed_value({1, 1}) == 1 && hp.leading.mixed_value({2, 0}) == 0;
    report.update(Json{{"polynomial", to_string(hp.full)}, {"target", to_string(expected)},
                       {"e(1,1)", rational_to_json(hp.leading.mixed_value({1, 1}))}});
  } else if (name == "golden") {
    auto p = o.p_schedule == Options{}.p_schedule ? std::vector<std::int64_t>{1, 2, 5, 55, 110} : schedule(o);
    auto mm = mixed_multiplicities(A, {1}, p, o.bound);
    const Rational target(89, 55);
    Rational sup = 0;
    std::int64_t attained = 0;
    for (const auto& step : mm.ladder) {
      if (step.value > sup) {
        sup = step.value;
        attained = step.p;
      }
    }
    pass = sup == target;
    report.update(Json{{"ladder", report_to_json(mm)["ladder"]}, {"sup", rational_to_json(sup)}, {"attained_at", attained},
                       {"target", rational_to_json(target)}});
  }
  report["status"] = pass ? "PASS" : "FAIL";
  return {report, pass ? 0 : 4};
}

// Rendering -------------------------------------------------------------------

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_flat_array(const Json& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return !e.is_structured(); });
}

void flatten(const Json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    std::vector<std::string> keys;
    for (auto it = v.begin(); it != v.end(); ++it) keys.push_back(it.key());
    std::sort(keys.begin(), keys.end());
    for (const auto& k : keys) flatten(v.at(k), prefix.empty() ? k : prefix + "." + k, rows);
  } else if (is_flat_array(v)) {
    std::string joined;
    for (const auto& e : v) joined += (joined.empty() ? "" : ",") + scalar_text(e);
    rows.emplace_back(prefix, "[" + joined + "]");
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, scalar_text(v));
  }
}

std::string render(const std::string& command, const Json& report, Format format) {
  if (format == Format::Json) return Json{{"schema_version", kSchemaVersion}, {"command", command}, {"result", report}}.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  if (format == Format::Csv && report.contains("ladder") && report.at("ladder").is_array()) {
    std::ostringstream out;
    out << "p,value_num,value_den,float\n";
    for (const auto& step : report.at("ladder")) {
      const auto value = parse_rational(step.at("value").get<std::string>());
      out << step.at("p").get<std::int64_t>() << ',' << value.get_num().get_str() << ',' << value.get_den().get_str() << ','
          << format_double(to_double(value)) << '\n';
    }
    return out.str();
  }
  flatten(report, "", rows);
  std::ostringstream out;
  if (format == Format::Csv) {
    out << "key,value\n";
    for (const auto& [k, v] : rows) {
      const bool quote = v.find_first_of(",\"") != std::string::npos;
      std::string escaped = v;
      for (std::size_t pos = 0; (pos = escaped.find('"', pos)) != std::string::npos; pos += 2) escaped.insert(pos, "\"");
      out << k << ',' << (quote ? "\"" + escaped + "\"" : v) << '\n';
    }
    return out.str();
  }
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  return out.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Newton-Okounkov bodies, volume functions and mixed multiplicities of monomial algebras", "oklab"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  const std::map<std::string, Format> formats{{"table", Format::Table}, {"json", Format::Json}, {"csv", Format::Csv}};
  app.add_option("--input", o.input, "JSON input: a file path or an inline object");
  app.add_option("--output", o.output, "write the report here instead of stdout");
  app.add_option("--format", o.format, "table, json or csv")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--nmax", o.n_max, "ray length for limit fits")->check(CLI::Range(4, 1000000));
  app.add_option("--pschedule", o.p_schedule, "Fujita ladder schedule, e.g. 1,2,4,8,16");
  app.add_option("--bound", o.bound, "closure and decomposability bound per axis")->check(CLI::Range(1, 64));
  app.add_option("--threads", o.threads, "worker threads for independent evaluations")->check(CLI::Range(1, 256));
  app.add_option("--example", o.example, "use a built-in preset as input");
  app.add_option("--x", o.x, "rational degree vector a,b,...");
  app.add_option("--type", o.type, "type vector d0,d1,...");
  app.add_option("--n", o.n, "integer degree vector");
  app.add_option("--bodies", o.bodies, "comma-separated polytope files");

  std::string verify_name;
  std::vector<std::pair<std::string, std::function<Outcome()>>> commands{
      {"hilbert", [&] { return hilbert(o); }},
      {"volume-fn", [&] { return volume_fn(o); }},
      {"no-body", [&] { return no_body(o); }},
      {"fiber", [&] { return fiber(o); }},
      {"mixed-mult", [&] { return mixed_mult(o); }},
      {"positivity", [&] { return positivity_cmd(o); }},
      {"ideal-family", [&] { return ideal_family(o); }},
      {"mixed-volume", [&] { return mixed_volume_cmd(o); }},
      {"verify-example", [&] { return verify(verify_name.empty() ? o.example : verify_name, o); }},
  };
  const std::map<std::string, std::string> help{
      {"hilbert", "Hilbert function at --n, or the multigraded Hilbert polynomial"},
      {"volume-fn", "volume function at --x (fiber volume, or counting with --method count)"},
      {"no-body", "global cone, or the Okounkov body of the Veronese at --n"},
      {"fiber", "compare the cone fiber at --n with the Veronese body"},
      {"mixed-mult", "mixed multiplicity of type --type with its Fujita ladder"},
      {"positivity", "subset-inequality positivity test for --type"},
      {"ideal-family", "closure checks, quotient lengths and limits for ideal families"},
      {"mixed-volume", "mixed volume of --bodies directly and through ideal families"},
      {"verify-example", "reproduce a preset's closed form and report PASS or FAIL"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, fn] : commands) subs[name] = app.add_subcommand(name, help.at(name));
  subs["volume-fn"]->add_option("--method", o.method, "auto, fiber or count")->check(CLI::IsMember({"auto", "fiber", "count"}));
  subs["verify-example"]->add_option("name", verify_name, "preset name");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error [validation] " << e.what() << '\n';
    return 2;
  }

  try {
    set_thread_count(o.threads);
    for (const auto& [name, fn] : commands) {
      if (!subs[name]->parsed()) continue;
      auto outcome = fn();
      const auto text = render(name, outcome.report, o.format);
      if (o.output.empty()) {
        out << text;
      } else {
        write_text_file(o.output, text);
      }
      return outcome.status;
    }
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "] " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error [internal] " << e.what() << '\n';
    return 4;
  }
  return 2;
}

}  // namespace oklab::cli
