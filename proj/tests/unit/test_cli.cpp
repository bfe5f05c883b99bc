#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "curvgauge/cli.hpp"

using nlohmann::json;
namespace cli = curvgauge::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string log;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, log;
  const int code = cli::run(args, out, log);
  return {code, out.str(), log.str()};
}

json strip_timing(json j) {
  j.erase("wallTime");
  j.erase("toolVersion");
  return j;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"identities", "--samples", "0"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"claim-search", "--family", "torus"}).code == cli::kUsage);
  CHECK(run({"slice", "--phi", "sin"}).code == cli::kUsage);
  CHECK(run({"slice", "--phi", "sin", "--t", "7"}).code == cli::kUsage);
  CHECK(run({"claim-search", "--samples", "-3"}).code == cli::kUsage);
}

TEST_CASE("help exits with 0") { CHECK(run({"--help"}).code == cli::kOk); }

TEST_CASE("epsilon0 report") {
  const auto r = run({"epsilon0"});
  CHECK(r.code == cli::kOk);
  const auto j = json::parse(r.out);
  CHECK(j["command"] == "epsilon0");
  CHECK(j["results"]["root"].get<double>() == doctest::Approx(0.1364461).epsilon(1e-6));
  CHECK(j["results"]["publishedValue"].get<double>() == doctest::Approx(0.9254).epsilon(1e-3));
  CHECK(r.log.find("published=0.925") != std::string::npos);
  CHECK(j["summary"]["failed"] == 0);
}

TEST_CASE("slice report") {
  const auto r = run({"slice", "--phi", "sin", "--t", "1.5707963"});
  CHECK(r.code == cli::kOk);
  const auto j = json::parse(r.out);
  CHECK(j["results"]["volumeFunctional"].get<double>() == doctest::Approx(26.3189).epsilon(1e-5));
  CHECK(std::abs(j["results"]["slack"].get<double>()) < 1e-9);
  CHECK(j["results"]["eulerNumber"].get<double>() == doctest::Approx(2.0));
  for (const auto& c : j["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("report schema") {
  const auto j = json::parse(run({"lemma", "--samples", "50"}).out);
  for (const char* key : {"tool", "toolVersion", "command", "config", "rng", "checks", "results", "summary", "wallTime"})
    CHECK_MESSAGE(j.contains(key), key);
  std::set<std::string> names;
  for (const auto& c : j["checks"]) {
    for (const char* key : {"name", "pass", "worstResidual", "tolerance", "samples", "witness"})
      CHECK_MESSAGE(c.contains(key), key);
    CHECK(names.insert(c["name"].get<std::string>()).second);
  }
  CHECK(j["summary"]["checks"] == j["checks"].size());
}

TEST_CASE("failing checks exit with 1 and still write the report") {
  const auto r = run({"rotsym", "--samples", "20000"});
  CHECK(r.code == cli::kCheckFailed);
  const auto j = json::parse(r.out);
  CHECK(j["summary"]["failed"].get<int>() > 0);
  CHECK(r.log.find("FAIL rotsym-q-le-chain1") != std::string::npos);
}

TEST_CASE("claim-search is reproducible") {
  const std::vector<std::string> args{"claim-search", "--family", "warped", "--samples", "3000", "--h-max", "2",
                                      "--seed", "11", "--restarts", "2"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == cli::kOk);
  CHECK(strip_timing(json::parse(a.out)).dump() == strip_timing(json::parse(b.out)).dump());
}

TEST_CASE("csv rows") {
  const auto r = run({"claim-search", "--family", "general", "--samples", "20", "--restarts", "0", "--format", "csv"});
  std::istringstream is(r.out);
  std::string line;
  int n = 0;
  std::getline(is, line);
  CHECK(line.rfind("index,accepted,H,mu1", 0) == 0);
  while (std::getline(is, line)) ++n;
  CHECK(n == 20);
}

TEST_CASE("out file and report round trip") {
  const std::string path = "curvgauge_test_report.json";
  const auto r = run({"epsilon0", "--out", path});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("PASS epsilon0-closed-form") != std::string::npos);
  const auto back = run({"report", "--in", path, "--format", "csv"});
  CHECK(back.code == cli::kOk);
  CHECK(back.out.rfind("name,pass,worstResidual", 0) == 0);
  CHECK(back.out.find("epsilon0-bracket,1") != std::string::npos);
  std::remove(path.c_str());
  CHECK(run({"report", "--in", path}).code == cli::kIo);
  CHECK(run({"epsilon0", "--out", "/nonexistent-dir/x.json"}).code == cli::kIo);
}

TEST_CASE("seed from the environment") {
  const auto base = json::parse(run({"lemma", "--samples", "5"}).out);
  CHECK(base["config"]["seed"] == 42);
  setenv(cli::kSeedEnv, "9", 1);
  const auto env = json::parse(run({"lemma", "--samples", "5"}).out);
  CHECK(env["config"]["seed"] == 9);
  const auto flag = json::parse(run({"lemma", "--samples", "5", "--seed", "3"}).out);
  CHECK(flag["config"]["seed"] == 3);
  setenv(cli::kSeedEnv, "abc", 1);
  CHECK(run({"lemma", "--samples", "5"}).code == cli::kUsage);
  unsetenv(cli::kSeedEnv);
}
