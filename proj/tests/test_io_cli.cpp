#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "distgame/analysis.hpp"
#include "distgame/json_io.hpp"
#include "testutil.hpp"

using distgame::Network;
using distgame::Strategy;
using distgame::WeightScheme;
using nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("DISTGAME_CLI");
  REQUIRE_MESSAGE(p != nullptr, "DISTGAME_CLI is not set");
  return p;
}

CliResult run_cli(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string fixture_path(const std::string& name) {
  return testutil::fixture_dir() + "/" + name;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = "/tmp/distgame_test_" + name;
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
  out.close();
  return path;
}

}  // namespace

TEST_CASE("network json round trip keeps ids one-based on disk") {
  Network net(4, {{0, 1}, {2, 3}}, 0.5, {1.0, 2.0, 3.0, 4.0},
              WeightScheme::multiplicative);
  std::string text = distgame::to_json(net);
  // external surface: site 0 appears as 1
  CHECK(text.find("[[1,2],[3,4]]") != std::string::npos);
  Network back = distgame::network_from_json(text);
  CHECK(back.node_count() == 4);
  CHECK(back.edges() == net.edges());
  CHECK(back.diag() == 0.5);
  CHECK(back.weights() == net.weights());
  CHECK(back.scheme() == WeightScheme::multiplicative);
  // a second trip produces identical bytes
  CHECK(distgame::to_json(back) == text);
}

TEST_CASE("network json defaults and errors") {
  Network net = distgame::network_from_json(
      R"({"n": 3, "edges": [[1, 2]]})");
  CHECK(net.diag() == 1.0);
  CHECK(net.scheme() == WeightScheme::unweighted);
  CHECK(net.weights() == std::vector<double>{1.0, 1.0, 1.0});

  CHECK_THROWS_AS(distgame::network_from_json("not json"),
                  std::invalid_argument);
  CHECK_THROWS_AS(distgame::network_from_json(R"({"edges": []})"),
                  std::invalid_argument);  // n missing
  CHECK_THROWS_AS(
      distgame::network_from_json(R"({"n": 3, "edges": [[0, 1]]})"),
      std::invalid_argument);  // 0 is out of range 1-based
  CHECK_THROWS_AS(
      distgame::network_from_json(R"({"n": 3, "edges": [[1, 4]]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      distgame::network_from_json(R"({"n": 3, "edges": [], "scheme": "x"})"),
      std::invalid_argument);
}

TEST_CASE("edge list parsing") {
  std::string text =
      "# a comment line\n"
      "4\n"
      "1 2   # trailing comment\n"
      "3 4\n"
      "\n";
  Network net = distgame::network_from_edge_list(text);
  CHECK(net.node_count() == 4);
  REQUIRE(net.edge_count() == 2);
  CHECK(net.edges()[0] == std::pair<int, int>{0, 1});
  CHECK(net.edges()[1] == std::pair<int, int>{2, 3});

  std::string out = distgame::to_edge_list(net);
  Network back = distgame::network_from_edge_list(out);
  CHECK(back.edges() == net.edges());
  CHECK(back.node_count() == net.node_count());

  CHECK_THROWS_AS(distgame::network_from_edge_list(""),
                  std::invalid_argument);
  CHECK_THROWS_AS(distgame::network_from_edge_list("4\n1\n"),
                  std::invalid_argument);  // lone id
  CHECK_THROWS_AS(distgame::network_from_edge_list("4\n1 2 3\n"),
                  std::invalid_argument);  // extra token
  CHECK_THROWS_AS(distgame::network_from_edge_list("x\n1 2\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(distgame::network_from_edge_list("2\n1 5\n"),
                  std::invalid_argument);  // out of range
}

TEST_CASE("strategy json round trip is positional") {
  Strategy x({0.25, 0.5, 0.25});
  std::string text = distgame::to_json(x);
  Strategy back = distgame::strategy_from_json(text);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == x[i]);
  CHECK_THROWS_AS(distgame::strategy_from_json(R"({"x": []})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(distgame::strategy_from_json(R"({"y": [1.0]})"),
                  std::invalid_argument);
}

TEST_CASE("value serializers use one-based site ids") {
  Network town = distgame::network_from_json(
      testutil::fixture_text("town10.json"));
  auto sup = distgame::check_support_conditions(town,
                                                testutil::sites({3, 5, 9}), 0);
  json s = json::parse(distgame::to_json(sup));
  CHECK(s["nodes"] == json::array({3, 5, 9}));
  CHECK(s["r"] == 0);
  CHECK(s["regular"] == true);

  auto eq = distgame::construct_uniform_equilibrium(sup);
  auto cert = distgame::verify_nash(eq.x, town);
  json c = json::parse(distgame::to_json(cert));
  CHECK(c["support"] == json::array({3, 5, 9}));
  CHECK(c["is_nash"] == true);
  CHECK(c["lambda"].get<double>() == doctest::Approx(1.0 / 3.0));

  auto report = distgame::classify_spectral(town, eq.x);
  json r = json::parse(distgame::to_json(report));
  CHECK(r["class"] == "strongly_rigid");
  CHECK(r["flexible"] == false);
  CHECK(r["method"] == "spectral");
  CHECK(r["witness"].is_null());
}

TEST_CASE("analysis report bytes are deterministic") {
  Network town = distgame::network_from_json(
      testutil::fixture_text("town10.json"));
  distgame::AnalysisOptions opts;
  opts.r_values = {0};
  opts.exact = true;
  auto a = distgame::analyze(town, opts);
  auto b = distgame::analyze(town, opts);
  std::string ja = distgame::emit_report(a, distgame::ReportFormat::json);
  std::string jb = distgame::emit_report(b, distgame::ReportFormat::json);
  CHECK(ja == jb);
  CHECK(json::parse(ja)["findings"].size() == 7);
  std::string ta = distgame::emit_report(a, distgame::ReportFormat::text);
  CHECK_FALSE(ta.empty());
}

TEST_CASE("cli analyze produces parseable findings") {
  auto res = run_cli("analyze --input " + fixture_path("town10.json") +
                     " --r 0 --exact");
  REQUIRE(res.exit_code == 0);
  json report = json::parse(res.out);
  CHECK(report["n"] == 10);
  CHECK(report["exact"] == true);
  CHECK(report["findings"].size() == 7);
  CHECK(report["oracle"]["ran"] == true);
  CHECK(report["oracle"]["all_found"] == true);
  bool saw_target = false;
  for (const auto& f : report["findings"])
    if (f["support"]["nodes"] == json::array({3, 5, 9})) {
      saw_target = true;
      CHECK(f["certificate"]["is_nash"] == true);
      CHECK(f["spectral"]["class"] == "strongly_rigid");
      CHECK(f["methods_agree"] == true);
    }
  CHECK(saw_target);
}

TEST_CASE("cli verify round trips a strategy file") {
  Network town = distgame::network_from_json(
      testutil::fixture_text("town10.json"));
  auto sup = distgame::check_support_conditions(town,
                                                testutil::sites({3, 5, 9}), 0);
  auto eq = distgame::construct_uniform_equilibrium(sup);
  std::string xpath = write_temp("x.json", distgame::to_json(eq.x));
  auto res = run_cli("verify --input " + fixture_path("town10.json") +
                     " --strategy " + xpath);
  REQUIRE(res.exit_code == 0);
  json cert = json::parse(res.out);
  CHECK(cert["is_nash"] == true);
  CHECK(cert["support"] == json::array({3, 5, 9}));
  std::remove(xpath.c_str());
}

TEST_CASE("cli equilibrium accepts one-based support ids") {
  auto res = run_cli("equilibrium --input " +
                     fixture_path("petersen10_additive.json") +
                     " --support 4,6,7");
  REQUIRE(res.exit_code == 0);
  json out = json::parse(res.out);
  CHECK(out["lambda"].get<double>() == doctest::Approx(0.4));
  CHECK(out["sufficient_ok"] == true);
  CHECK(out["certificate"]["is_nash"] == true);
}

TEST_CASE("cli edge list input honors the global knobs") {
  std::string path = write_temp("tri.txt", "3\n1 2\n2 3\n1 3\n");
  auto res = run_cli("enumerate --input " + path +
                     " --diag 1.0 --format text");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find("total=7") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("cli exit codes distinguish input errors") {
  auto missing = run_cli("analyze --input /nonexistent.json --r 0");
  CHECK(missing.exit_code == 1);
  auto bad_site = run_cli("equilibrium --input " +
                          fixture_path("town10.json") + " --support 3,99");
  CHECK(bad_site.exit_code == 1);
  auto no_sub = run_cli("--input " + fixture_path("town10.json"));
  CHECK(no_sub.exit_code == 1);
  // failed verification still exits 0 with is_nash false
  std::string xpath =
      write_temp("nonnash.json", R"({"x":[0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1]})");
  auto nn = run_cli("verify --input " + fixture_path("town10.json") +
                    " --strategy " + xpath);
  CHECK(nn.exit_code == 0);
  CHECK(json::parse(nn.out)["is_nash"] == false);
  std::remove(xpath.c_str());
}

TEST_CASE("cli simulate is reproducible for a fixed seed") {
  std::string args = "simulate --input " + fixture_path("petersen10.json") +
                     " --x0 random --seed 42";
  auto a = run_cli(args);
  auto b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  json out = json::parse(a.out);
  CHECK(out["converged"] == true);
  CHECK(out["certificate"]["is_nash"] == true);
}
