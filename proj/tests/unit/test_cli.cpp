#include <doctest.h>

#include "cli.hpp"
#include "oklab/io.hpp"
#include "oklab/presets.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace oklab;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = oklab::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(OKLAB_DATA_DIR) + "/" + name; }

bool has_line(const std::string& text, const std::string& key, const std::string& value) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string k, v;
    words >> k >> v;
    if (k == key && v == value) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("documented invocations") {
  auto fiber = invoke({"volume-fn", "--example", "min", "--x", "2,3"});
  CHECK(fiber.status == 0);
  CHECK(has_line(fiber.out, "value", "2/1"));
  CHECK(has_line(fiber.out, "method", "fiber"));

  auto nonpoly = invoke({"verify-example", "nonpoly", "--n", "3,4", "--nmax", "200"});
  CHECK(nonpoly.status == 0);
  CHECK(has_line(nonpoly.out, "status", "PASS"));
  CHECK(has_line(nonpoly.out, "target", "4"));

  auto bridge = invoke({"mixed-volume", "--bodies", data("square.json") + "," + data("triangle.json"), "--type", "1,1"});
  CHECK(bridge.status == 0);
  CHECK(has_line(bridge.out, "geometric", "2/1"));
  CHECK(has_line(bridge.out, "status", "AGREE"));
}

TEST_CASE("every preset verifies") {
  for (const auto& name : preset_names()) {
    auto run = invoke({"verify-example", name, "--nmax", "200"});
    CHECK_MESSAGE(run.status == 0, name);
    CHECK_MESSAGE(has_line(run.out, "status", "PASS"), name);
  }
}

TEST_CASE("exit codes") {
  CHECK(invoke({"volume-fn", "--example", "nope", "--x", "1"}).status == 2);
  CHECK(invoke({"volume-fn", "--example", "min"}).status == 2);
  CHECK(invoke({"bogus"}).status == 2);
  CHECK(invoke({"hilbert", "--input", "{\"r\": 1"}).status == 2);
  CHECK(invoke({"hilbert", "--input", "/nonexistent/file.json"}).status == 2);
  // Not decomposable: the refusal names the witness degree.
  CHECK(invoke({"mixed-mult", "--example", "min", "--type", "1,0"}).status == 2);
  auto err = invoke({"mixed-mult", "--example", "min", "--type", "1,0"}).err;
  CHECK(err.find("mixed_multiplicities") != std::string::npos);
  CHECK(err.find("(1,1)") != std::string::npos);
}

TEST_CASE("resource limits exit with 3") {
  // The multigraded box enumeration along a long ray exceeds the memory budget.
  auto run = invoke({"volume-fn", "--example", "segre", "--x", "40,40", "--method", "count", "--nmax", "400"});
  CHECK(run.status == 3);
  CHECK(run.err.find("resource-limit") != std::string::npos);
}

TEST_CASE("deterministic output") {
  for (const auto& format : {"table", "json", "csv"}) {
    std::vector<std::string> args{"mixed-mult", "--example", "golden", "--type", "1", "--pschedule", "1,5,55", "--format", format};
    auto a = invoke(args);
    auto b = invoke(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
  }
  auto csv = invoke({"mixed-mult", "--example", "golden", "--type", "1", "--pschedule", "1,5,55", "--format", "csv"}).out;
  CHECK(csv == "p,value_num,value_den,float\n1,1,1,1\n5,8,5,1.6\n55,89,55,1.6181818181818182\n");
}

TEST_CASE("json reports re-parse") {
  auto run = invoke({"no-body", "--example", "min", "--n", "2,3", "--format", "json"});
  REQUIRE(run.status == 0);
  auto doc = Json::parse(run.out);
  CHECK(doc.at("schema_version") == 1);
  auto body = polytope_from_json(doc.at("result").at("body"));
  CHECK(body == convex_hull({{0}, {2}}));

  auto tmp = std::filesystem::temp_directory_path() / "oklab_cli_body.json";
  std::ofstream(tmp) << document("polytope", doc.at("result").at("body")).dump();
  auto back = read_json_file(tmp.string());
  CHECK(polytope_from_json(unwrap(back, "polytope")) == body);
  std::filesystem::remove(tmp);
}

TEST_CASE("output files") {
  auto tmp = std::filesystem::temp_directory_path() / "oklab_cli_report.txt";
  auto run = invoke({"hilbert", "--example", "segre", "--output", tmp.string()});
  CHECK(run.status == 0);
  CHECK(run.out.empty());
  std::ifstream in(tmp);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(has_line(text.str(), "polynomial", "n1*n2"));
  std::filesystem::remove(tmp);
  CHECK(invoke({"hilbert", "--example", "segre", "--output", "/nonexistent/dir/x.txt"}).status == 2);
}

TEST_CASE("family commands") {
  auto mm = invoke({"mixed-mult", "--input", data("m_adic_pair.json"), "--type", "1,0", "--pschedule", "1,2,4"});
  CHECK(mm.status == 0);
  CHECK(has_line(mm.out, "exact", "1/1"));
  auto pos = invoke({"positivity", "--input", data("m_adic_x.json"), "--type", "0,1"});
  CHECK(pos.status == 0);
  CHECK(has_line(pos.out, "positive", "false"));
  auto fam = invoke({"ideal-family", "--input", data("m_adic_pair.json"), "--n", "1,1", "--nmax", "60", "--threads", "2"});
  CHECK(fam.status == 0);
  CHECK(has_line(fam.out, "quotient_dim", "2"));
}
