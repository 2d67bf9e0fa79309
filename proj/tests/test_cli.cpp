#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "loewner/errors.hpp"

using namespace loewner;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "loewner");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("loewner_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("function specs") {
  CHECK(describe(cli::parse_function_spec("power:0.5")) == describe(power(0.5)));
  CHECK(describe(cli::parse_function_spec("moebius-convex:-0.5")) == describe(moebius_convex(-0.5)));
  CHECK(describe(cli::parse_function_spec("affine:1,2")) == describe(affine(1, 2)));
  CHECK(describe(cli::parse_function_spec(R"({"kind":"power","alpha":2})")) == describe(power(2)));
  CHECK_THROWS_AS(cli::parse_function_spec("power"), ConfigError);
  CHECK_THROWS_AS(cli::parse_function_spec("power:x"), ConfigError);
  CHECK_THROWS_AS(cli::parse_function_spec("sine:1"), ConfigError);
  CHECK(cli::parse_interval("0.1,5") == Interval{0.1, 5});
  CHECK(cli::parse_interval("0,inf") == Interval{0, kInf});
}

TEST_CASE("build emits the matrix") {
  const auto r = invoke({"build", "--function", "power:0.5", "--points", "1,4", "--seed", "1"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("schema") == 1);
  CHECK(j.at("result").at("entries")[0][1].get<double>() == doctest::Approx(1.0 / 3));
  const auto csv = invoke({"build", "--function", "power:2", "--points", "1,3", "--format", "csv", "--seed", "1"});
  CHECK(csv.out == "c0,c1\n2,4\n4,6\n");
}

TEST_CASE("usage and configuration errors exit with 1") {
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kUsage);
  CHECK(invoke({"build", "--points", "1,2"}).code == cli::kUsage);
  const auto bad = invoke({"build", "--function", "power:0.5", "--points", "-1,2"});
  CHECK(bad.code == cli::kUsage);
  CHECK(bad.err.find("outside domain") != std::string::npos);
  CHECK(invoke({"check", "--function", "power:2", "--format", "xml"}).code == cli::kUsage);
  CHECK(invoke({"--help"}).code == cli::kOk);
}

TEST_CASE("expect-hold turns counterexamples into exit code 2") {
  const std::vector<std::string> base{"check", "--function", "power:3", "--points", "1,2", "--property", "cnd",
                                      "--seed", "1"};
  CHECK(invoke(base).code == cli::kOk);
  auto strict = base;
  strict.push_back("--expect-hold");
  const auto r = invoke(strict);
  CHECK(r.code == cli::kCounterexample);
  const Json j = Json::parse(r.out);
  CHECK(j.at("result").at("verdict") == "counterexample");
  CHECK(j.at("result").at("closed_form_disagreements") == 0);
  CHECK(invoke({"monotone", "--function", "power:0.5", "--trials", "200", "--seed", "3", "--expect-hold"}).code ==
        cli::kOk);
}

TEST_CASE("reports replay byte for byte") {
  const std::string path = temp_path("hunt.json");
  const auto r = invoke({"hunt", "--function", "power:3.5", "--property", "cpd", "--order", "3", "--budget", "800",
                      "--seed", "17", "--output", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const Json j = Json::parse(slurp(path));
  CHECK(j.at("result").at("found") == true);
  const auto again = invoke({"replay", "--report", path, "--jobs", "2"});
  CHECK(again.code == cli::kOk);
  CHECK(again.out == slurp(path));

  std::string text = slurp(path);
  const auto pos = text.find("\"evaluations\": ");
  REQUIRE(pos != std::string::npos);
  text.insert(pos + 15, "1");
  std::ofstream(path) << text;
  CHECK(invoke({"replay", "--report", path}).code == cli::kReplayMismatch);
  std::ofstream(path) << "{}";
  CHECK(invoke({"replay", "--report", path}).code == cli::kUsage);
  std::filesystem::remove(path);
}

TEST_CASE("absent seed is drawn and recorded") {
  const auto r = invoke({"check", "--function", "power:0.5", "--trials", "5"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("config").at("seed").is_number_unsigned());
}

TEST_CASE("every command renders in all formats") {
  const std::vector<std::vector<std::string>> cmds = {
      {"check", "--function", "power:3.5", "--order", "3", "--trials", "50"},
      {"convex", "--function", "power:3", "--trials", "100"},
      {"sweep", "--alpha", "2:3:0.5", "--order", "2,3", "--property", "cpd,monotone", "--trials", "100"},
      {"hunt", "--function", "power:-1.5", "--property", "cnd", "--budget", "300"},
      {"probe", "--implication", "convex[1]=/=>cnd-growth[2]", "--family", "examples"},
      {"probe", "--list"},
      {"conjugate", "--function", R"({"kind":"moebius-monotone","lambda":0.5})"},
      {"verify-identities", "--function",
       R"({"kind":"restricted","domain":{"lo":0.1,"hi":5},"inner":{"kind":"power","alpha":0.5}})", "--trials",
       "100"},
      {"boundary", "--function", "power:0.5", "--kind", "sup-f-over-t-inf"}};
  for (const auto& c : cmds) {
    for (const char* fmt : {"json", "csv", "human"}) {
      auto args = c;
      args.insert(args.end(), {"--seed", "4", "--format", fmt});
      const auto r = invoke(args);
      CAPTURE(c[0]);
      CAPTURE(fmt);
      CHECK(r.code == 0);
      CHECK(r.err.empty());
      CHECK_FALSE(r.out.empty());
    }
  }
}

TEST_CASE("sweep csv lists every cell") {
  const auto r = invoke({"sweep", "--alpha", "-2:4:0.25", "--order", "2", "--property", "cpd", "--trials", "200",
                      "--seed", "9", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "alpha,size,property,verdict,evaluations,seed,violation,witness_points");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 25);
}
