#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "neckcut/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// Runs the installed binary through the shell and captures stdout.
Result run_binary(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" + std::string(NECKCUT_CLI_PATH) + "' " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "neckcut_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("catenoid solve prints both neck parameters") {
  const auto r = run_binary("catenoid solve --r 1 --h 0.1 --json");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  const double cu = j["summary"]["c_unstable"], cs = j["summary"]["c_stable"];
  // Both solve r = c·cosh(h/c).
  CHECK(std::abs(cu * std::cosh(0.1 / cu) - 1.0) < 1e-9);
  CHECK(std::abs(cs * std::cosh(0.1 / cs) - 1.0) < 1e-9);
  CHECK(cu < cs);
  CHECK(j["summary"]["area_unstable"].get<double>() > j["summary"]["area_stable"].get<double>());
  CHECK(j["meta"]["command"] == "catenoid solve");
}

TEST_CASE("exit codes") {
  CHECK(run_binary("--help").code == 0);
  CHECK(run_binary("").code == 1);
  CHECK(run_binary("bogus").code == 1);
  CHECK(run_binary("catenoid solve --r -1").code == 1);
  CHECK(run_binary("catenoid solve --h 5").code == 1);
  CHECK(run_binary("neck fit --n 9").code == 1);
  // The n = 2 control has no admissible offset.
  CHECK(run_binary("neck optimum --n 2 --A 0.5 --h 0.01").code == 2);
  // Wide necks for m = 4 break the budget.
  CHECK(run_binary("doubling sweep --m 4 --epsilon 0.2 --delta 0.01 --t-grid 0.44,0.45").code == 2);
  CHECK(run_binary("neck optimum --n 3 --h 0.01").code == 0);
}

TEST_CASE("doubling sweep report") {
  const auto path = scratch("doubling.json");
  fs::remove(path);
  const auto r = run_binary("doubling sweep --m 2 --out '" + path.string() + "'");
  REQUIRE(r.code == 0);
  const auto j = json::parse(slurp(path));
  CHECK(j["summary"]["margin"].get<double>() > 0.0);
  CHECK(j["summary"]["pass"] == true);
  CHECK(j["summary"]["euler_necks"].get<double>() == -8.0);
  double prev = -1.0, sup = 0.0;
  for (const auto& row : j["rows"]) {
    CHECK(row["t"].get<double>() > prev);
    prev = row["t"];
    sup = std::max(sup, row["area"].get<double>());
  }
  CHECK(sup == j["summary"]["sup_area"].get<double>());
  CHECK_FALSE(fs::exists(path.string() + ".tmp"));
}

TEST_CASE("neck fit reports slope n") {
  const auto r = run_binary("neck fit --n 3 --json");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(std::abs(j["summary"]["slope"].get<double>() - 3.0) <= 0.01);
  CHECK(j["rows"].size() == 13);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  const auto a = scratch("a.json"), b = scratch("b.json"), c = scratch("c.csv");
  const std::string args = "fermi tube --h 0.05 --t-grid 0,0.05,0.2 ";
  REQUIRE(run_binary(args + "--out '" + a.string() + "' --csv '" + c.string() + "'", "NECKCUT_THREADS=1").code == 0);
  REQUIRE(run_binary(args + "--out '" + b.string() + "'", "NECKCUT_THREADS=3").code == 0);
  CHECK(slurp(a) == slurp(b));
  // CSV uses 17 significant digits, so every value round-trips.
  const auto csv = slurp(c);
  CHECK(csv.rfind("t,area,phase,upper,lower\n", 0) == 0);
  const auto j = json::parse(slurp(a));
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  for (const auto& row : j["rows"]) {
    REQUIRE(std::getline(lines, line));
    const double area = std::stod(line.substr(line.find(',') + 1));
    CHECK(area == row["area"].get<double>());
  }
}

TEST_CASE("slice export in index-list format") {
  const auto path = scratch("slice.mesh");
  const auto r = run_binary("doubling slice --m 2 --t 0.2 --mesh-out '" + path.string() + "' --json");
  REQUIRE(r.code == 0);
  const auto text = slurp(path);
  CHECK(text.rfind("ambient round_s3\n", 0) == 0);
  CHECK(json::parse(r.out)["summary"]["euler"].get<double>() == -8.0);
}

TEST_CASE("in-process run and verify-all subset") {
  std::ostringstream out, err;
  CHECK(neckcut::cli::run({"verify-all", "--only", "1,10"}, out, err) == 0);
  CHECK(out.str().find("PASS  1") != std::string::npos);
  CHECK(out.str().find("PASS 10") != std::string::npos);
  CHECK(out.str().find("2/2 criteria passed") != std::string::npos);
  std::ostringstream o2, e2;
  CHECK(neckcut::cli::run({"verify-all", "--only", "11"}, o2, e2) == 1);
  CHECK(neckcut::cli::run({"cutoff", "energy", "--t", "0.01", "--json"}, o2, e2) == 0);
}
