#include "support.hpp"

#include "catch_amalgamated.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using owf::test::data_path;
using owf::test::run_cli;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("owf_cli_" + name)).string();
}

std::vector<std::string> corpus(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(data_path(dir)))
    if (e.path().extension() == ".json") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

bool has_float(const std::string& s) { return std::regex_search(s, std::regex(R"(\d\.\d{3,}|e[-+]\d\d)")); }

}  // namespace

TEST_CASE("verify exit codes and output") {
  const auto t1 = run_cli("verify --table 1");
  CHECK(t1.exit_code == 0);
  CHECK(t1.out.find("(1/3, -1/3, -1/3, 1/3)") != std::string::npos);
  CHECK(t1.out.find("PASS") != std::string::npos);

  const auto t2 = run_cli("verify --table 2 --d 9");
  CHECK(t2.exit_code == 0);
  CHECK(t2.out.find("result: empty") != std::string::npos);

  CHECK(run_cli("verify --table 2").exit_code == 1);
  CHECK(run_cli("verify --table 2 --d 8").exit_code == 1);
  CHECK(run_cli("verify --table 6").exit_code == 1);
  CHECK(run_cli("verify").exit_code == 1);
  CHECK(run_cli("verify --cert " + tmp("missing.json")).exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);

  const auto t3 = run_cli("verify --table 3");
  CHECK(t3.exit_code == 0);
  CHECK(t3.out.find("{w - 1, w, w + 1, w^2 + 1, w^2 - 6*w + 1, 3*w^2 - 2*w + 3}") != std::string::npos);
}

TEST_CASE("report JSON") {
  const auto out = tmp("report.json");
  REQUIRE(run_cli("verify --table 1 --json " + out).exit_code == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  for (const char* k : {"command", "inputs", "result", "steps", "timing"}) {
    INFO(k);
    CHECK(j.contains(k));
  }
  CHECK_FALSE(has_float(j["result"].dump()));
  std::filesystem::remove(out);
}

TEST_CASE("oracle") {
  CHECK(run_cli("oracle --d 13 --trials 10").exit_code == 1);
  CHECK(run_cli("oracle --d 1 --trials 10").exit_code == 1);
  CHECK(run_cli("oracle --d 2 --trials 100").exit_code == 0);
  CHECK(run_cli("oracle --d 3 --trials 200 --seed 9").exit_code == 0);
}

TEST_CASE("enumerate") {
  const auto r = run_cli("enumerate --d 3 --stats");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("families: 144") != std::string::npos);
  CHECK(r.out.find("distinct Omega-sets: 48") != std::string::npos);
  CHECK(r.out.find("warning") == std::string::npos);
  CHECK(run_cli("enumerate --d 4 --stats").exit_code == 0);
  CHECK(run_cli("enumerate --d 2").exit_code == 1);
}

TEST_CASE("search writes identical certificates for identical flags") {
  const auto a = tmp("s1.json"), b = tmp("s2.json");
  const auto ra = run_cli("search --d 3 --seed 1 --budget 16 --target point --out " + a);
  const auto rb = run_cli("search --d 3 --seed 1 --budget 16 --target point --out " + b);
  CHECK(ra.exit_code == rb.exit_code);
  CHECK((ra.exit_code == 0 || ra.exit_code == 3));
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());

  const auto det = tmp("s3.json");
  REQUIRE(run_cli("search --d 3 --target point --out " + det).exit_code == 0);
  const auto v = run_cli("verify --cert " + det);
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("(1/3, -1/3, -1/3, 1/3)") != std::string::npos);
  CHECK(run_cli("search --d 2").exit_code == 1);
  for (const auto& f : {a, b, det}) std::filesystem::remove(f);
}

TEST_CASE("negative controls fail with a reason") {
  const auto files = corpus("negative");
  REQUIRE(files.size() >= 10);
  for (const auto& f : files) {
    INFO(f);
    const auto r = run_cli("verify --cert " + f);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("reason:") != std::string::npos);
  }
}

TEST_CASE("malformed input never crashes") {
  const auto files = corpus("fuzz");
  REQUIRE_FALSE(files.empty());
  for (const auto& f : files) {
    INFO(f);
    const auto r = run_cli("verify --cert " + f);
    CHECK_FALSE(r.signaled);
    CHECK((r.exit_code == 1 || r.exit_code == 2));
  }
}

TEST_CASE("symbolic checks and sidecheck") {
  CHECK(run_cli("appendix").exit_code == 0);
  CHECK(run_cli("jordan").exit_code == 0);
  const auto at4 = run_cli("sidecheck --table 4 --d 4");
  CHECK(at4.exit_code == 2);
  CHECK(at4.out.find("VANISHES") != std::string::npos);
  CHECK(run_cli("sidecheck --table 3 --d 6").exit_code == 0);
  CHECK(run_cli("sidecheck --table 3 --d 8").exit_code == 1);
  CHECK(run_cli("sidecheck --table 5").exit_code == 1);
}

TEST_CASE("no floating point output without --diagnostics") {
  for (const char* cmd : {"verify --table 1", "verify --table 3", "sidecheck --table 4 --d 4", "appendix"}) {
    INFO(cmd);
    CHECK_FALSE(has_float(run_cli(cmd).out));
  }
}
