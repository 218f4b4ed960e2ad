#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using Catch::Matchers::ContainsSubstring;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hyf");
  std::ostringstream out;
  std::ostringstream err;
  const int code = hyf::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const char* env = std::getenv("HYF_TEST_TMPDIR");
  const fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "hyf_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const auto path = scratch() / name;
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string golden_a() {
  return write("golden_a.csv", "time,price\n2,10\n3,15\n4,25\n5,10\n7,5\n8,1\n11.5,5\n");
}
std::string golden_b() {
  return write("golden_b.csv", "time,price\n1,5\n6,10\n9,15\n10,20\n11,25\n12,20\n");
}

}  // namespace

TEST_CASE("estimate on the golden files", "[cli]") {
  const auto r = run({"estimate", golden_a(), golden_b()});
  CHECK(r.code == hyf::cli::kOk);
  CHECK_THAT(r.out, ContainsSubstring("covariance      -30\n"));
  CHECK_THAT(r.out, ContainsSubstring("overlaps        10\n"));

  const auto j = json::parse(run({"estimate", golden_a(), golden_b(), "--json"}).out);
  CHECK(j["command"] == "estimate");
  CHECK(j["results"]["covariance"] == -30.0);
  CHECK(j["results"]["overlaps"] == 10);
  CHECK(j["results"]["grouped_terms_corner_split"] == 4);
  CHECK(j["version"] == "0.1.0");
  CHECK(j.contains("seed"));
  CHECK(j.contains("inputs"));
}

TEST_CASE("detect on the golden files", "[cli]") {
  const auto r = run({"detect", golden_a(), golden_b(), "--include-boundary"});
  CHECK(r.code == hyf::cli::kOk);
  CHECK_THAT(r.out, ContainsSubstring("index 1  time 3\n"));
  CHECK_THAT(r.out, ContainsSubstring("index 2  time 4\n"));
  CHECK_THAT(r.out, ContainsSubstring("index 3  time 10\n"));
  CHECK_THAT(r.out, ContainsSubstring("index 4  time 11\n"));
  CHECK_THAT(r.out, ContainsSubstring("f/m             0.4\n"));

  for (const std::string method : {"interval", "label", "oracle", "all"}) {
    const auto jr = run({"detect", golden_a(), golden_b(), "--include-boundary", "--json",
                         "--method", method});
    REQUIRE(jr.code == hyf::cli::kOk);
    const auto j = json::parse(jr.out);
    const auto& res = j["results"];
    CHECK(res["f"] == 4);
    CHECK(res["m"] == 10);
    CHECK(res["loss"].get<double>() ==
          res["f"].get<double>() / res["m"].get<double>());
    CHECK(res["nonextant_b"][1]["time"] == 11.0);
  }

  const auto interior = json::parse(run({"detect", golden_a(), golden_b(), "--json"}).out);
  CHECK(interior["results"]["f"] == 2);
  CHECK(interior["results"]["boundary_mode"] == "interior");
}

TEST_CASE("input failures map to exit codes", "[cli][errors]") {
  const auto tie = write("tie.csv", "time,price\n1,1\n5,2\n9,3\n");
  const auto r = run({"estimate", golden_a(), tie});
  CHECK(r.code == hyf::cli::kValidation);
  CHECK_THAT(r.err, ContainsSubstring("time 5"));

  const auto bad = write("bad.csv", "time,price\n1,2\n3,x\n");
  const auto p = run({"detect", golden_a(), bad});
  CHECK(p.code == hyf::cli::kParse);
  CHECK_THAT(p.err, ContainsSubstring(":3:"));

  CHECK(run({"estimate", golden_a(), (scratch() / "absent.csv").string()}).code ==
        hyf::cli::kParse);

  const auto back = write("back.csv", "time,price\n1,1\n0.5,2\n");
  CHECK(run({"estimate", golden_a(), back}).code == hyf::cli::kValidation);
}

TEST_CASE("jitter resolves shared timestamps", "[cli]") {
  std::string a = "time,price\n";
  std::string b = "time,price\n";
  for (int k = 0; k < 10; ++k) {
    a += std::to_string(k) + "," + std::to_string(k * k) + "\n";
    b += std::to_string(k) + "," + std::to_string(2 * k) + "\n";
  }
  const auto fa = write("sync_a.csv", a);
  const auto fb = write("sync_b.csv", b);
  CHECK(run({"detect", fa, fb}).code == hyf::cli::kValidation);
  const auto r = run({"detect", fa, fb, "--jitter", "--include-boundary", "--json"});
  REQUIRE(r.code == hyf::cli::kOk);
  const auto j = json::parse(r.out);
  CHECK(j["results"]["f"] == 0);
  CHECK(j["results"]["nonextant_a"].empty());
  CHECK(j["inputs"]["jittered_points"] == 10);
}

TEST_CASE("simulate is deterministic per seed", "[cli][simulate]") {
  const auto p1 = (scratch() / "sim1").string();
  const auto p2 = (scratch() / "sim2").string();
  REQUIRE(run({"simulate", "--seed", "42", "--out-prefix", p1}).code == hyf::cli::kOk);
  REQUIRE(run({"simulate", "--seed", "42", "--out-prefix", p2}).code == hyf::cli::kOk);
  CHECK(slurp(p1 + "_a.csv") == slurp(p2 + "_a.csv"));
  CHECK(slurp(p1 + "_b.csv") == slurp(p2 + "_b.csv"));
  CHECK_THAT(slurp(p1 + "_a.csv"), Catch::Matchers::StartsWith("time,price\n"));

  REQUIRE(run({"simulate", "--seed", "43", "--out-prefix", p2}).code == hyf::cli::kOk);
  CHECK(slurp(p1 + "_a.csv") != slurp(p2 + "_a.csv"));
}

TEST_CASE("simulate honours the seed environment variable", "[cli][simulate]") {
  const auto p1 = (scratch() / "env1").string();
  const auto p2 = (scratch() / "env2").string();
  ::setenv(hyf::cli::kSeedEnv, "42", 1);
  const auto r = run({"simulate", "--out-prefix", p1, "--json"});
  ::unsetenv(hyf::cli::kSeedEnv);
  REQUIRE(r.code == hyf::cli::kOk);
  CHECK(json::parse(r.out)["seed"] == 42);
  REQUIRE(run({"simulate", "--seed", "42", "--out-prefix", p2}).code == hyf::cli::kOk);
  CHECK(slurp(p1 + "_a.csv") == slurp(p2 + "_a.csv"));

  const auto d = run({"simulate", "--out-prefix", p1, "--json"});
  CHECK(json::parse(d.out)["seed"] == hyf::cli::kDefaultSeed);

  ::setenv(hyf::cli::kSeedEnv, "abc", 1);
  CHECK(run({"simulate", "--out-prefix", p1}).code == hyf::cli::kUsage);
  ::unsetenv(hyf::cli::kSeedEnv);
}

TEST_CASE("simulated point counts follow the rates", "[cli][simulate]") {
  int inside = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const auto prefix = (scratch() / "count").string();
    const auto r = run({"simulate", "--seed", std::to_string(seed), "--out-prefix", prefix,
                        "--json"});
    REQUIRE(r.code == hyf::cli::kOk);
    const auto j = json::parse(r.out)["results"];
    const double total = j["points_a"].get<double>() + j["points_b"].get<double>();
    if (std::abs(total - 200.0) <= 3.0 * std::sqrt(200.0)) ++inside;
  }
  CHECK(inside >= 99);
}

TEST_CASE("all detectors agree on simulated files", "[cli][simulate]") {
  for (int seed = 0; seed < 100; ++seed) {
    const auto prefix = (scratch() / "agree").string();
    REQUIRE(run({"simulate", "--seed", std::to_string(seed), "--horizon", "50", "--out-prefix",
                 prefix})
                .code == hyf::cli::kOk);
    for (const char* boundary : {"--include-boundary", "--json"}) {
      const auto r = run({"detect", prefix + "_a.csv", prefix + "_b.csv", "--method", "all",
                          boundary});
      REQUIRE(r.code == hyf::cli::kOk);
    }
  }
}

TEST_CASE("simulate usage errors", "[cli][errors]") {
  const auto prefix = (scratch() / "bad").string();
  CHECK(run({"simulate", "--horizon", "0", "--out-prefix", prefix}).code == hyf::cli::kUsage);
  CHECK(run({"simulate", "--rate-a", "-1", "--out-prefix", prefix}).code == hyf::cli::kUsage);
  CHECK(run({"simulate"}).code == hyf::cli::kUsage);
  CHECK(run({"simulate", "--horizon", "1", "--rate-a", "0.0001", "--rate-b", "0.0001",
             "--out-prefix", prefix})
            .code == hyf::cli::kRejection);
  CHECK(run({"simulate", "--out-prefix", "/nonexistent/dir/x"}).code == hyf::cli::kParse);
}

TEST_CASE("table1 output", "[cli][table1]") {
  const auto r = run({"table1", "--runs", "10", "--horizon", "100"});
  REQUIRE(r.code == hyf::cli::kOk);
  CHECK_THAT(r.out, ContainsSubstring("T=100"));
  CHECK_THAT(r.out, ContainsSubstring("theoretical 0.2500"));
  CHECK_THAT(r.out, ContainsSubstring("r=1,0.1"));

  const auto j = json::parse(
      run({"table1", "--runs", "10", "--horizon", "50,100", "--rates", "1:1,2:1/2", "--json",
           "--seed", "9"})
          .out);
  const auto& s = j["results"]["summaries"];
  REQUIRE(s.size() == 4);
  CHECK(s[3]["config"]["rate_a"] == 2.0);
  CHECK(s[3]["config"]["rate_b"] == 0.5);
  CHECK(s[3]["config"]["horizon"] == 100.0);
  CHECK(s[0]["runs"] == 10);
  CHECK(s[0].contains("std_loss"));
  CHECK(s[0]["boundary_mode"] == "interior");
  CHECK(j["seed"] == 9);

  const auto again = run({"table1", "--runs", "10", "--horizon", "50,100", "--rates",
                          "1:1,2:1/2", "--json", "--seed", "9"});
  CHECK(json::parse(again.out) == j);
}

TEST_CASE("table1 usage errors", "[cli][errors]") {
  const auto r = run({"table1", "--runs", "10", "--rates", "1-1"});
  CHECK(r.code == hyf::cli::kUsage);
  CHECK_THAT(r.err, ContainsSubstring("Usage"));
  CHECK(run({"table1", "--runs", "10", "--rates", "1:0"}).code == hyf::cli::kUsage);
  CHECK(run({"table1", "--runs", "10", "--rates", "1:1/0"}).code == hyf::cli::kUsage);
  CHECK(run({"table1", "--runs", "1"}).code == hyf::cli::kUsage);
  CHECK(run({"table1", "--runs", "x"}).code == hyf::cli::kUsage);
}

TEST_CASE("top-level usage", "[cli]") {
  CHECK(run({}).code == hyf::cli::kUsage);
  CHECK(run({"frobnicate"}).code == hyf::cli::kUsage);
  CHECK(run({"detect", "a.csv"}).code == hyf::cli::kUsage);
  CHECK(run({"detect", "a.csv", "b.csv", "--method", "psychic"}).code == hyf::cli::kUsage);
  const auto help = run({"--help"});
  CHECK(help.code == hyf::cli::kOk);
  CHECK_THAT(help.out, ContainsSubstring("table1"));
}
