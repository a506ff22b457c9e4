#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "agewise/errors.hpp"
#include "agewise/report.hpp"

using namespace agewise;

namespace {

std::string data(const char* name) { return std::string(AGEWISE_DATA_DIR) + "/" + name; }

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

std::vector<std::string> lines_of(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("formatting helpers") {
  CHECK(fixed6(10.0) == "10.000000");
  CHECK(fixed6(-4.1209606) == "-4.120961");
  CHECK(csv_number(0.1) == "0.1");
  CHECK(csv_number(1.0 / 3.0) == "0.333333333333333");
  // FNV-1a 64 reference vectors.
  CHECK(input_digest("") == "fnv1a64:cbf29ce484222325");
  CHECK(input_digest("a") == "fnv1a64:af63dc4c8601ec8c");
  CHECK(version() == "0.1.0");
}

TEST_CASE("cmd_classify") {
  const CommandResult r = cmd_classify(data("example_3_1.json"));
  CHECK(r.exit_code == kExitOk);
  CHECK(r.text.rfind("agewise 0.1.0\ncommand: classify ", 0) == 0);
  CHECK(contains(r.text, "input-digest: fnv1a64:"));
  CHECK(contains(r.text, "change_point: 10.000000"));
  CHECK(contains(r.text, "summary: NWBUE, x0 = 10.000000"));

  const CommandResult n = cmd_classify(data("example_3_3.json"));
  CHECK(contains(n.text, "summary: IDMRL (tau0 = 2.000000) and NWUE, not NWBUE"));
  CHECK(contains(cmd_classify(data("exponential_1.json")).text, "summary: EXPONENTIAL"));
  CHECK(contains(cmd_classify(data("weibull_2.json")).text, "summary: NBUE"));

  ClassifyOptions opts;
  opts.grid = 512;
  CHECK(contains(cmd_classify(data("example_3_4.json"), opts).text, "summary: NWBUE, x0 = 3.000000"));
  CHECK_THROWS_AS(cmd_classify(data("invalid_slope.json")), ValidationError);
}

TEST_CASE("cmd_bounds") {
  const CommandResult r = cmd_bounds(data("example_3_1.json"), 2.0);
  CHECK(r.exit_code == kExitOk);
  CHECK(contains(r.text, "x0: 10.000000 (from classification)"));
  CHECK(contains(r.text, "(not implied by class)"));
  CHECK(contains(r.text, "150.000000"));
  CHECK(contains(r.text, "250.000000"));
  CHECK(contains(r.text, "369.452805"));
  CHECK(contains(r.text, "deficiency: D(2.000000) = -4.120961"));

  // An explicit x0 of 0 asserts NBUE, which example_3_1 breaks.
  CHECK(cmd_bounds(data("example_3_1.json"), 2.0, 0.0).exit_code == kExitCheckFailure);
  CHECK(cmd_bounds(data("weibull_2.json"), 2.0).exit_code == kExitOk);
}

TEST_CASE("cmd_moments and cmd_verify_mrl") {
  const CommandResult m = cmd_moments(data("weibull_2.json"), {1.0, 2.0});
  CHECK(m.exit_code == kExitOk);
  CHECK(contains(m.text, "2.000000    1.000000          1.570796          0.570796"));

  const CommandResult ok = cmd_verify_mrl(data("example_3_4_mrl.json"));
  CHECK(ok.exit_code == kExitOk);
  CHECK(contains(ok.text, "valid: yes"));
  const CommandResult bad = cmd_verify_mrl(data("invalid_slope.json"));
  CHECK(bad.exit_code == kExitCheckFailure);
  CHECK(contains(bad.text, "violation: V2"));
}

TEST_CASE("cmd_invert_mrl writes the CSV") {
  const auto out = temp_file("agewise_invert_test.csv");
  const CommandResult r = cmd_invert_mrl(data("example_3_4_mrl.json"), out, 50);
  CHECK(r.exit_code == kExitOk);
  const auto rows = lines_of(out.string());
  REQUIRE(rows.size() == 51);
  CHECK(rows[0] == "x,mrl,survival,mrl_recomputed");
  CHECK(rows[1] == "0,2,1,2");
  std::filesystem::remove(out);
}

TEST_CASE("cmd_converge writes the CSV") {
  const auto out = temp_file("agewise_converge_test.csv");
  const CommandResult r = cmd_converge("weibull-shape", 16, {1.0, 2.0}, out);
  CHECK(r.exit_code == kExitOk);
  const auto rows = lines_of(out.string());
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "n,mu_n,err_r1,err_r2,cdf_sup_distance");
  CHECK(rows[1].rfind("1,0.886226925452", 0) == 0);
  std::filesystem::remove(out);
  CHECK_THROWS_AS(cmd_converge("gamma", 4, {2.0}), InvalidArgument);
}

TEST_CASE("reproduce: checks, exit code and determinism") {
  const auto checks = reproduce_checks();
  std::set<int> ids;
  for (const auto& c : checks) {
    CAPTURE(c.name);
    CHECK(c.pass);
    ids.insert(c.id);
  }
  CHECK(ids == std::set<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
  CHECK(checks.size() == 12);
  CHECK(reproduce_exit_code(checks) == kExitOk);

  auto broken = checks;
  broken[4].pass = false;
  CHECK(reproduce_exit_code(broken) == kExitCheckFailure);
  CHECK(contains(render_reproduce(broken, {}, false), "FAIL"));

  const auto errata = reproduce_errata();
  const std::string first = render_reproduce(checks, errata, true);
  CHECK(first == render_reproduce(reproduce_checks(), reproduce_errata(), true));
  const auto doc = nlohmann::json::parse(first);
  CHECK(doc.at("checks").size() == 12);
  for (const auto& c : doc.at("checks")) CHECK(c.at("status") == "PASS");

  const CommandResult text = cmd_reproduce(false);
  CHECK(text.exit_code == kExitOk);
  CHECK(contains(text.text, "1.392"));
}
