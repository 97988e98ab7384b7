#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "coeffbound/cli.hpp"

using json = nlohmann::json;

namespace {

struct CliResult {
  int rc;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int rc = coeffbound::cli::run(args, out, err);
  return {rc, out.str(), err.str()};
}

json parse(const CliResult& r) { return json::parse(r.out); }

void check_envelope(const json& doc, const std::string& command) {
  CHECK(doc.size() == 6);
  REQUIRE(doc.contains("command"));
  REQUIRE(doc.contains("params"));
  REQUIRE(doc.contains("results"));
  REQUIRE(doc.contains("violations"));
  REQUIRE(doc.contains("seed"));
  REQUIRE(doc.contains("version"));
  CHECK(doc["command"] == command);
  CHECK(doc["violations"].is_array());
  CHECK(doc["version"] == "0.1.0");
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (const char c : s)
    if (c == '\n') ++n;
  return n;
}

// Runs the installed binary (not the in-process entry point).
CliResult run_binary(const std::string& args) {
  const std::string cmd =
      std::string(COEFFBOUND_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

}  // namespace

TEST_CASE("cli: lambda0 reports the certified constants") {
  const auto r = run_cli({"lambda0", "--no-timestamp"});
  REQUIRE(r.rc == 0);
  const json doc = parse(r);
  check_envelope(doc, "lambda0");
  CHECK(doc["seed"] == 1);
  CHECK(doc["violations"].empty());
  const auto& res = doc["results"];
  CHECK(std::abs(res["lambda0"].get<double>() - 0.4004363670683606) <= 1e-12);
  CHECK(std::abs(res["lambda0_residual"].get<double>()) <= 1e-14);
  CHECK(std::abs(res["ps_threshold"].get<double>() - 0.35678917232533095) <=
        1e-12);
  CHECK(std::abs(res["ps_threshold_residual"].get<double>()) <= 1e-14);
}

TEST_CASE("cli: output is byte-identical without timestamps") {
  const auto a = run_cli({"lambda0", "--no-timestamp"});
  const auto b = run_cli({"lambda0", "--no-timestamp"});
  CHECK(a.out == b.out);

  const auto c = run_cli(
      {"verify", "--lambda", "0.5", "--samples", "25", "--no-timestamp"});
  const auto d = run_cli(
      {"verify", "--lambda", "0.5", "--samples", "25", "--no-timestamp"});
  REQUIRE(c.rc == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("cli: timestamp appears in params by default") {
  const auto r = run_cli({"lambda0"});
  REQUIRE(r.rc == 0);
  const json doc = parse(r);
  REQUIRE(doc["params"].contains("timestamp"));
  const std::string ts = doc["params"]["timestamp"].get<std::string>();
  CHECK(ts.size() == 20);  // e.g. 2026-08-16T12:00:00Z
  CHECK(ts.back() == 'Z');
  CHECK(ts[4] == '-');
  CHECK(ts[10] == 'T');
}

TEST_CASE("cli: csv output") {
  const auto r = run_cli({"lambda0", "--format", "csv"});
  REQUIRE(r.rc == 0);
  CHECK(r.out.rfind("name,value\n", 0) == 0);
  CHECK(count_lines(r.out) == 5);

  const auto v = run_cli({"verify", "--lambda", "0.5", "--samples", "10",
                          "--format", "csv"});
  REQUIRE(v.rc == 0);
  CHECK(v.out.rfind("suite,checks,failures,worst\n", 0) == 0);
  CHECK(count_lines(v.out) == 6);  // header + five suites
}

TEST_CASE("cli: verify passes on a small run") {
  const auto r = run_cli({"verify", "--lambda", "0.41:1.0:3", "--samples",
                          "40", "--no-timestamp"});
  REQUIRE(r.rc == 0);
  const json doc = parse(r);
  check_envelope(doc, "verify");
  CHECK(doc["results"]["passed"] == true);
  const auto& suites = doc["results"]["suites"];
  REQUIRE(suites.size() == 5);
  for (const auto& s : suites) {
    CHECK(s["failures"] == 0);
    CHECK(s["checks"].get<long long>() > 0);
  }
  CHECK(doc["violations"].empty());
}

TEST_CASE("cli: verify below the validity thresholds still exits 0") {
  const auto r = run_cli(
      {"verify", "--lambda", "0.3", "--samples", "30", "--no-timestamp"});
  REQUIRE(r.rc == 0);
  const json doc = parse(r);
  for (const auto& s : doc["results"]["suites"]) {
    if (s["name"] == "chain") CHECK(s.contains("below_lambda0_decreases"));
    if (s["name"] == "ps") CHECK(s["checks"] == 0);  // out of region: skipped
  }
}

TEST_CASE("cli: chain reports saturation at the extremal tuple") {
  const auto r = run_cli(
      {"chain", "--lambda", "0.5", "--samples", "25", "--no-timestamp"});
  REQUIRE(r.rc == 0);
  const json doc = parse(r);
  check_envelope(doc, "chain");
  CHECK(doc["results"]["extremal_saturated"] == true);
  CHECK(doc["results"]["non_monotone"] == 0);
  CHECK(doc["results"]["extremal_chain"].size() == 5);

  const auto csv = run_cli({"chain", "--lambda", "0.5", "--samples", "25",
                            "--format", "csv"});
  REQUIRE(csv.rc == 0);
  CHECK(csv.out.rfind("index,r_exact,bound_after_ps,bound_after_c2,"
                      "bound_f_form,bound_final,monotone\n",
                      0) == 0);
  CHECK(count_lines(csv.out) == 26);

  // Below lambda0, decreases are recorded but are not violations.
  const auto low = run_cli(
      {"chain", "--lambda", "0.3", "--samples", "50", "--no-timestamp"});
  REQUIRE(low.rc == 0);
  CHECK(parse(low)["results"]["extremal_saturated"] == true);
}

TEST_CASE("cli: search stays at the conjectured bound") {
  const auto r = run_cli({"search", "--lambda", "0.6", "--starts", "2",
                          "--budget", "150", "--no-timestamp"});
  REQUIRE(r.rc == 0);
  const json doc = parse(r);
  check_envelope(doc, "search");
  const auto& res = doc["results"];
  const double best = res["best_value"].get<double>();
  const double bound = res["bound"].get<double>();
  CHECK(best <= bound + 1e-6);
  CHECK(best >= bound - 1e-3);  // pinned start saturates immediately
  CHECK(res["argmax"].contains("c1_re"));
  CHECK(res["evaluations"].get<long long>() <= 2 * 150);
}

TEST_CASE("cli: sweep produces one row per grid point") {
  const auto r = run_cli({"sweep", "--lambda", "0.45:1.0:4", "--starts", "2",
                          "--budget", "120", "--no-timestamp"});
  REQUIRE(r.rc == 0);
  const json doc = parse(r);
  check_envelope(doc, "sweep");
  REQUIRE(doc["results"]["rows"].size() == 4);
  for (const auto& row : doc["results"]["rows"])
    CHECK(row["gap"].get<double>() > -1e-6);

  const auto csv = run_cli({"sweep", "--lambda", "0.45:1.0:4", "--starts",
                            "2", "--budget", "120", "--format", "csv"});
  CHECK(csv.out.rfind("lambda,max_a5,bound,gap\n", 0) == 0);
  CHECK(count_lines(csv.out) == 5);
}

TEST_CASE("cli: ps-check in and out of the validity region") {
  const auto out_of_region =
      run_cli({"ps-check", "--mu", "3", "--nu", "1", "--starts", "6",
               "--budget", "400", "--no-timestamp"});
  // Exceeding nu outside the region is not a violation; exit stays 0.
  REQUIRE(out_of_region.rc == 0);
  const json doc = parse(out_of_region);
  check_envelope(doc, "ps-check");
  CHECK(doc["results"]["in_region"] == false);
  CHECK(doc["results"]["bound_exceeded"].is_boolean());
  CHECK(doc["violations"].empty());

  const auto in_region =
      run_cli({"ps-check", "--lambda", "0.5", "--starts", "4", "--budget",
               "300", "--no-timestamp"});
  REQUIRE(in_region.rc == 0);
  const json doc2 = parse(in_region);
  CHECK(doc2["results"]["in_region"] == true);
  CHECK(doc2["results"]["best_value"].get<double>() <=
        doc2["results"]["nu"].get<double>() + 1e-6);
  CHECK(doc2["results"]["bound_exceeded"] == false);
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run_cli({}).rc == 2);
  CHECK(run_cli({"frobnicate"}).rc == 2);
  CHECK(run_cli({"search"}).rc == 2);  // --lambda is required
  CHECK(run_cli({"search", "--lambda", "1.5"}).rc == 2);
  CHECK(run_cli({"search", "--lambda", "abc"}).rc == 2);
  CHECK(run_cli({"search", "--lambda", "0"}).rc == 2);
  CHECK(run_cli({"verify", "--lambda", "0.5:0.6:0"}).rc == 2);
  CHECK(run_cli({"verify", "--lambda", "0.5", "--format", "xml"}).rc == 2);
  CHECK(run_cli({"lambda0", "--bogus-flag"}).rc == 2);
  CHECK(run_cli({"ps-check", "--mu", "3"}).rc == 2);
  CHECK(run_cli({"ps-check"}).rc == 2);
  CHECK(run_cli({"chain", "--lambda", "0.4:0.6:3"}).rc == 2);

  const auto bad = run_cli({"search", "--lambda", "abc"});
  CHECK(!bad.err.empty());
}

TEST_CASE("cli: --help succeeds") {
  const auto r = run_cli({"--help"});
  CHECK(r.rc == 0);
  CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("cli: --out writes the report to a file") {
  const std::string path = "cli_out_test.json";
  const auto r = run_cli({"lambda0", "--no-timestamp", "--out", path});
  REQUIRE(r.rc == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  const json doc = json::parse(ss.str());
  check_envelope(doc, "lambda0");
  std::remove(path.c_str());
}

TEST_CASE("cli: installed binary matches the in-process entry point") {
  const auto bin = run_binary("lambda0 --no-timestamp");
  REQUIRE(bin.rc == 0);
  const auto proc = run_cli({"lambda0", "--no-timestamp"});
  CHECK(bin.out == proc.out);

  CHECK(run_binary("frobnicate").rc == 2);
  CHECK(run_binary("verify --lambda 0.45 --samples 5 --no-timestamp").rc == 0);
}
