#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef ORLICZ_CLI_BIN
#error "ORLICZ_CLI_BIN must point at the built binary"
#endif
#ifndef ORLICZ_SOURCE_DIR
#error "ORLICZ_SOURCE_DIR must point at the repo root"
#endif

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct run_result {
  int exit_code;
  std::string output;
};

// Run a subcommand against a fixture config, capturing stdout bytes.
run_result run_cli(const std::string& args) {
  std::string tmp = std::string(ORLICZ_SOURCE_DIR) + "/build/cli_capture.tmp";
  std::string cmd = std::string(ORLICZ_CLI_BIN) + " " + args + " > " + tmp + " 2> /dev/null";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  run_result r;
  r.exit_code = WEXITSTATUS(rc);
  r.output = slurp(tmp);
  std::remove(tmp.c_str());
  return r;
}

std::string fixture(const std::string& name) {
  return "--config " + std::string(ORLICZ_SOURCE_DIR) + "/tests/fixtures/" + name;
}

std::string golden(const std::string& name) {
  return slurp(std::string(ORLICZ_SOURCE_DIR) + "/tests/golden/" + name);
}

} // namespace

TEST_CASE("fixture outputs match their golden bytes") {
  struct row {
    const char* config;
    const char* subcommand;
    const char* golden_file;
    int expect_exit;
  };
  const row rows[] = {
      {"check_ve.json", "check", "check_ve.json.out", 1},
      {"check_dp.json", "check", "check_dp.json.out", 0},
      {"modulus_ve.json", "modulus", "modulus_ve.csv", 0},
      {"norm_u.json", "norm", "norm_u.json.out", 0},
      {"verify_morrey.json", "verify", "verify_morrey.json.out", 0},
      {"conjugate_ve.json", "conjugate", "conjugate_ve.csv", 0},
  };
  for (const auto& r : rows) {
    INFO(r.config << " " << r.subcommand);
    auto res = run_cli(fixture(r.config) + " " + r.subcommand);
    CHECK(res.exit_code == r.expect_exit);
    CHECK(res.output == golden(r.golden_file));
  }
}

TEST_CASE("repeated runs are byte-identical") {
  auto a = run_cli(fixture("verify_morrey.json") + " verify");
  auto b = run_cli(fixture("verify_morrey.json") + " verify");
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("the out flag writes the same bytes as stdout") {
  std::string out = std::string(ORLICZ_SOURCE_DIR) + "/build/cli_outflag.tmp";
  auto direct = run_cli(fixture("modulus_ve.json") + " modulus");
  auto filed = run_cli(fixture("modulus_ve.json") + " modulus --out " + out);
  REQUIRE(filed.exit_code == 0);
  CHECK(filed.output.empty());
  CHECK(slurp(out) == direct.output);
  std::remove(out.c_str());
}

TEST_CASE("flag overrides rescale the report") {
  // doubling the seed changes the sampled pairs but not the validity
  auto a = run_cli(fixture("verify_morrey.json") + " verify --seed 8");
  auto b = run_cli(fixture("verify_morrey.json") + " verify");
  REQUIRE(a.exit_code == 0);
  CHECK(a.output != b.output);
  CHECK(a.output.find("\"seed\": 8") != std::string::npos);
}

TEST_CASE("config problems exit with the usage code") {
  auto missing = run_cli("--config /nonexistent.json check");
  CHECK(missing.exit_code == 2);

  std::string bad = std::string(ORLICZ_SOURCE_DIR) + "/build/cli_bad.tmp.json";
  {
    std::ofstream f(bad);
    f << "{\"domain\": {\"lower\": [0,0], \"upper\": [1,1]},"
      << " \"family\": {\"kind\": \"variable_exponent\", \"p\": \"4+*sin(x1)\"}}";
  }
  auto parse = run_cli("--config " + bad + " check");
  CHECK(parse.exit_code == 2);

  {
    std::ofstream f(bad);
    f << "{\"domain\": {\"lower\": [0,0], \"upper\": [1,1]},"
      << " \"family\": {\"kind\": \"no_such_family\"}}";
  }
  auto kind = run_cli("--config " + bad + " check");
  CHECK(kind.exit_code == 2);
  std::remove(bad.c_str());

  auto usage = run_cli("check");
  CHECK(usage.exit_code == 2);
}
