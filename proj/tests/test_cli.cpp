// Drives the built CLI binary end to end; the binary path arrives as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "polyspace/report.hpp"

namespace {

std::string g_binary;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string command = g_binary + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

nlohmann::json run_json(const std::string& args, int expected_exit = 0) {
  const RunResult result = run(args);
  CHECK(result.exit_code == expected_exit);
  return nlohmann::json::parse(result.output);
}

}  // namespace

TEST_CASE("exact subcommand") {
  const auto j = run_json("exact --lengths 1,1,1,2 --kind planar --json");
  CHECK(j["betti"] == nlohmann::json::array({"1", "1"}));
  CHECK(j["total"] == "2");
  CHECK(j["generic"] == true);
  CHECK(j["mode"] == "exact");

  const auto eq = run_json("exact --equilateral 5 --kind planar --json");
  CHECK(eq["betti"] == nlohmann::json::array({"1", "8", "1"}));
  CHECK(eq["total"] == "10");

  const auto sphere = run_json("exact --lengths 1,1,1,2 --kind spatial --json");
  CHECK(sphere["betti"] == nlohmann::json::array({"1", "1"}));

  // float mode via decimal points
  const auto f = run_json("exact --lengths 0.3,0.3,0.5 --kind planar --json");
  CHECK(f["mode"] == "float");
}

TEST_CASE("exact error paths map to documented exit codes") {
  CHECK(run("exact --lengths 1,2,3 --kind spatial").exit_code == 5);
  CHECK(run("exact --lengths 1,2.5,3 --kind planar").exit_code == 2);
  CHECK(run("exact --lengths 1,2 --kind planar").exit_code == 2);
  CHECK(run("exact --kind planar").exit_code == 2);
  CHECK(run("exact --lengths 1,1,1 --equilateral 5").exit_code == 2);
  // 31 sides exceed the default enumeration cap
  std::string long_vector = "2";
  for (int i = 1; i < 31; ++i) long_vector += ",1";
  CHECK(run("exact --lengths " + long_vector).exit_code == 4);
  CHECK(run("equilateral --n 6").exit_code == 7);
}

TEST_CASE("equilateral subcommand") {
  const auto planar = run_json("equilateral --n 7 --json");
  CHECK(planar["total"] == "44");
  CHECK(planar["betti"] ==
        nlohmann::json::array({"1", "6", "30", "6", "1"}));
  const auto spatial = run_json("equilateral --n 7 --kind spatial --json");
  CHECK(spatial["total"] == "30");
}

TEST_CASE("mc subcommand: degenerate vector and determinism") {
  const auto j =
      run_json("mc --lengths 1,1,1,2 --perms 1000 --seed 7 --json");
  CHECK(j["entries"][0]["estimate"] == 1.0);
  CHECK(j["entries"][0]["std_error"] == 0.0);
  CHECK(j["entries"][1]["estimate"] == 0.0);

  const std::string command =
      "mc --model uniform:0,1 --n 16 --t 1 --samples 20000 --seed 7 "
      "--kind planar";
  const RunResult first = run(command);
  const RunResult second = run(command);
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);

  const auto mean = nlohmann::json::parse(run(command + " --json").output);
  // normalized mean total at n=16 measured near 0.66
  CHECK(double(mean["value"]) > 0.5);
  CHECK(double(mean["value"]) < 0.8);
}

TEST_CASE("tau-stats subcommand") {
  const auto j = run_json(
      "tau-stats --model uniform:0,1 --n 50 --samples 500 --seed 3 --json");
  CHECK(int(j["min"]) >= 0);
  CHECK(int(j["max"]) <= 49);
  const double mean = j["mean"];
  CHECK(mean / 50.0 > 0.3);
  CHECK(mean / 50.0 < 0.7);
}

TEST_CASE("calpha subcommand") {
  const auto j = run_json("calpha --alpha 0 --model uniform:0,1 --json");
  CHECK(std::abs(double(j["value"]) - 1.0 / 3.0) < 1e-6);
}

TEST_CASE("verify subcommand writes artifacts and maps exit codes") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "polyspace_cli_test";
  fs::create_directories(dir);
  const fs::path config_path = dir / "clt.conf";
  {
    std::ofstream out(config_path);
    out << "experiment = clt_tau\nmodel = uniform:0,1\nn_grid = 50, 100\n"
        << "samples = 1000\nseed = 3\noutput = " << (dir / "clt").string()
        << "\ntol.require_ks_decreasing = 1\ntol.var_rel_tol = 0.2\n";
  }
  const RunResult ok = run("verify --config " + config_path.string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("PASS") != std::string::npos);
  CHECK(fs::exists(dir / "clt.json"));
  CHECK(fs::exists(dir / "clt.csv"));
  std::ifstream json_in(dir / "clt.json");
  std::string text((std::istreambuf_iterator<char>(json_in)),
                   std::istreambuf_iterator<char>());
  const auto parsed = polyspace::ExperimentResult::from_json(text);
  CHECK(parsed.pass);
  CHECK(parsed.experiment == "clt_tau");

  // a failing declared check exits 1
  const fs::path failing = dir / "failing.conf";
  {
    std::ofstream out(failing);
    out << "experiment = clt_tau\nmodel = uniform:0,1\nn_grid = 50\n"
        << "samples = 1000\nseed = 3\noutput = " << (dir / "failing").string()
        << "\ntol.ks_max = 0.0001\n";
  }
  CHECK(run("verify --config " + failing.string()).exit_code == 1);

  // config below the sample floor exits 3
  const fs::path invalid = dir / "invalid.conf";
  {
    std::ofstream out(invalid);
    out << "experiment = clt_tau\nmodel = uniform:0,1\nn_grid = 50\n"
        << "samples = 10\noutput = x\n";
  }
  CHECK(run("verify --config " + invalid.string()).exit_code == 3);

  const fs::path unknown = dir / "unknown.conf";
  {
    std::ofstream out(unknown);
    out << "experiment = flux\nmodel = uniform:0,1\nn_grid = 50\n"
        << "samples = 500\noutput = x\n";
  }
  CHECK(run("verify --config " + unknown.string()).exit_code == 3);
  CHECK(run("verify --config /nonexistent/path.conf").exit_code == 10);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-binary>\n");
    return 1;
  }
  g_binary = argv[1];
  doctest::Context context;
  return context.run();
}
