#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fastlat/json_io.hpp"
#include "fastlat/stbc.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string stdout_text;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string out_path = "/tmp/fastlat_cli_out_" + std::to_string(counter++) + ".txt";
  const std::string cmd =
      std::string(FASTLAT_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.stdout_text = buffer.str();
  std::remove(out_path.c_str());
  return result;
}

}  // namespace

TEST_CASE("analyze reports the silver optimum") {
  const CliResult res = run_cli("analyze --builtin silver");
  REQUIRE(res.exit_code == 0);
  const json out = json::parse(res.stdout_text);
  CHECK(out["report"]["exponent"] == 5);
  CHECK(out["report"]["g_group"].is_null());
  CHECK(out["report"]["fast_decodable"] == true);
  for (const auto& check : out["report"]["bound_checks"]) CHECK(check["pass"] == true);
}

TEST_CASE("analyze reports the alamouti optimum") {
  const CliResult res = run_cli("analyze --builtin alamouti");
  REQUIRE(res.exit_code == 0);
  const json out = json::parse(res.stdout_text);
  CHECK(out["report"]["exponent"] == 1);
  CHECK(out["report"]["g_group"] == 4);
  CHECK(out["conflict_edges"].empty());
}

TEST_CASE("identical invocations produce identical bytes") {
  const CliResult a = run_cli("analyze --builtin silver");
  const CliResult b = run_cli("analyze --builtin silver");
  CHECK(a.stdout_text == b.stdout_text);

  const CliResult s1 = run_cli("simulate --builtin silver --auto --trials 5 --seed 3");
  const CliResult s2 = run_cli("simulate --builtin silver --auto --trials 5 --seed 3");
  REQUIRE(s1.exit_code == 0);
  CHECK(s1.stdout_text == s2.stdout_text);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("analyze").exit_code == 2);                       // no code given
  CHECK(run_cli("analyze --builtin nosuch").exit_code == 2);      // unknown builtin
  CHECK(run_cli("nosuchcommand").exit_code == 2);                 // unknown subcommand
  CHECK(run_cli("simulate --builtin silver --auto").exit_code == 2);  // missing --seed

  const std::string bad = "/tmp/fastlat_cli_bad.json";
  std::ofstream(bad) << "{ not json";
  CHECK(run_cli("analyze --input " + bad).exit_code == 2);
  std::remove(bad.c_str());
}

TEST_CASE("bounds subcommand") {
  const CliResult res = run_cli("bounds --n 4 --division");
  REQUIRE(res.exit_code == 0);
  const json out = json::parse(res.stdout_text);
  CHECK(out["g_max"] == 4);

  const CliResult plain = run_cli("bounds --n 8");
  CHECK(json::parse(plain.stdout_text)["g_max"] == 10);

  const CliResult table = run_cli("bounds --n 4 --format table");
  CHECK(table.exit_code == 0);
  CHECK(table.stdout_text.find("n,nu2,g_general,hre,g_max") == 0);
}

TEST_CASE("construct subcommand verifies its families") {
  const CliResult res = run_cli("construct --family anticommute --ell 2");
  REQUIRE(res.exit_code == 0);
  const json out = json::parse(res.stdout_text);
  CHECK(out["count"] == 7);
  CHECK(out["dimension"] == 8);
  CHECK(out["verification"]["pairwise_anticommuting"] == true);

  const CliResult hre = run_cli("construct --family hre --t 2");
  REQUIRE(hre.exit_code == 0);
  CHECK(json::parse(hre.stdout_text)["count"] == 5);
}

TEST_CASE("qr-verify passes on the silver optimum partition") {
  const CliResult res = run_cli("qr-verify --builtin silver --auto --seed 9 --trials 10");
  REQUIRE(res.exit_code == 0);
  const json out = json::parse(res.stdout_text);
  CHECK(out["all_pass"] == true);
}

TEST_CASE("oracle subcommand diffs search against enumeration") {
  const CliResult res = run_cli("oracle --vertices 8 --trials 40 --seed 13");
  REQUIRE(res.exit_code == 0);
  const json out = json::parse(res.stdout_text);
  CHECK(out["mismatches"] == 0);
}

TEST_CASE("saved bases and partitions round-trip through the CLI") {
  const std::string basis_path = "/tmp/fastlat_cli_roundtrip.json";
  fastlat::save_code(fastlat::silver_code(), basis_path);
  const CliResult res = run_cli("analyze --input " + basis_path);
  REQUIRE(res.exit_code == 0);
  CHECK(json::parse(res.stdout_text)["report"]["exponent"] == 5);
  std::remove(basis_path.c_str());
}
