// End-to-end checks of the udw-delocal binary (path injected by CMake).
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "udw/templates.hpp"
#include "udw/units.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(UDW_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli constants matches the library closed forms") {
  const RunResult r = run_cli("constants --E 1 --M 1e6 --c 1");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  const auto p = udw::make_detector_params(1.0, 1e6, 1.0, 1.0);
  const auto sc = udw::series_constants(p);
  const auto kin = udw::critical_kinematics(p);
  CHECK(j["A"].get<double>() == sc.A);
  CHECK(j["B"].get<double>() == sc.B);
  CHECK(j["p0"].get<double>() == sc.p0);
  CHECK(j["L0"].get<double>() == sc.L0);
  CHECK(j["v_crit"].get<double>() == kin.v_crit);
  CHECK(j["p_threshold"].get<double>() == kin.p_threshold);
}

TEST_CASE("cli rate emits a RateResult record") {
  const RunResult r =
      run_cli("rate spont --E 1 --M 1e6 --c 1 --lambda 1 --density gaussian --L 1e-4");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j["method"] == "quadrature");
  CHECK(j["rate"].get<double>() > 0.0);
  CHECK(j["diagnostics"].contains("moment2"));
}

TEST_CASE("cli hydrogen rate reports the published-scale relative increase") {
  const RunResult r = run_cli("hydrogen rate --L 5.29e-11");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j["relative_increase"].get<double>() == doctest::Approx(0.0084).epsilon(0.02));
  CHECK(j["velocity_spread"].get<double>() == doctest::Approx(5.29e3).epsilon(0.01));
  CHECK(j["rate"].get<double>() > 0.0);
}

TEST_CASE("cli hydrogen constants carries all five series fields plus residual") {
  const RunResult r = run_cli("hydrogen constants");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  for (const char* key : {"C", "D", "p0", "L0", "v0", "fit_residual"}) {
    CAPTURE(key);
    CHECK(j.contains(key));
    CHECK(j[key].get<double>() > 0.0);
  }
  CHECK(j["fit_residual"].get<double>() < 1e-6);
}

TEST_CASE("cli hydrogen calibrate emits the machine-readable report") {
  const RunResult r = run_cli("hydrogen calibrate");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j.contains("omega_implied_eV"));
  CHECK(j.contains("D_ratio_vs_mass_ratio_sq"));
  CHECK(j.contains("notes"));
  CHECK(j["omega_implied_eV"].get<double>() == doctest::Approx(1.58983).epsilon(1e-3));
}

TEST_CASE("cli template grid emits p,T rows") {
  const RunResult r = run_cli("template --kind excite --E 1 --M 1 --c 1 --p-grid 0.1:10:5:log");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.rfind("p,T", 0) == 0);
  int lines = 0;
  for (char c : r.output) lines += (c == '\n');
  CHECK(lines == 6);  // header + 5 rows
}

TEST_CASE("cli threshold reports the critical kinematics") {
  const RunResult r = run_cli("threshold --E 2 --M 3 --c 0.7 --density gaussian --L 1");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  const auto kin = udw::critical_kinematics(udw::make_detector_params(2, 3, 0.7, 1));
  CHECK(j["v_crit"].get<double>() == kin.v_crit);
  CHECK(j["fraction_above"].get<double>() >= 0.0);
}

TEST_CASE("cli sweep: 50-row csv, monotone rate, reproducible across jobs") {
  const std::string out1 = "/tmp/udw_cli_sweep_j1.csv";
  const std::string out4 = "/tmp/udw_cli_sweep_j4.csv";
  const std::string args =
      "sweep --var L --scale log --start 1e2 --stop 1e4 --points 50 --rate spont "
      "--E 1 --M 1e3 --c 1 --lambda 1 --density gaussian";
  REQUIRE(run_cli(args + " --jobs 1 --out " + out1).exit_code == 0);
  REQUIRE(run_cli(args + " --jobs 4 --out " + out4).exit_code == 0);
  const std::string csv1 = slurp(out1);
  CHECK(csv1 == slurp(out4));

  std::istringstream lines(csv1);
  std::string line;
  std::getline(lines, line);
  CHECK(line.rfind("# udw-delocal v", 0) == 0);
  std::getline(lines, line);  // header
  int rows = 0;
  double prev_rate = 1e300;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    const size_t comma = line.find(',');
    const double rate = std::strtod(line.c_str() + comma + 1, nullptr);
    CHECK(rate < prev_rate);
    prev_rate = rate;
  }
  CHECK(rows == 50);
  std::remove(out1.c_str());
  std::remove(out4.c_str());
}

TEST_CASE("cli honors a config file with flag overrides") {
  const std::string path = "/tmp/udw_cli_config_test.cfg";
  {
    std::ofstream f(path);
    f << "# scalar model\nunit_system = natural\ngap_E = 1\nmass_M = 1e6\n"
         "wave_speed_c = 1\ncoupling_lambda = 1\ndensity = gaussian\nL = 1e-4\n";
  }
  const RunResult from_config = run_cli("rate spont --config " + path);
  const RunResult from_flags =
      run_cli("rate spont --E 1 --M 1e6 --c 1 --lambda 1 --density gaussian --L 1e-4");
  REQUIRE(from_config.exit_code == 0);
  CHECK(json::parse(from_config.output)["rate"] == json::parse(from_flags.output)["rate"]);
  // flag overrides the config value
  const RunResult overridden = run_cli("rate classical --config " + path + " --lambda 2");
  CHECK(json::parse(overridden.output)["rate"].get<double>() == 4.0);
  std::remove(path.c_str());
}

TEST_CASE("cli exit codes: domain error 1, numeric failure 2, usage nonzero") {
  CHECK(run_cli("rate spont --E -1 --M 1 --c 1").exit_code == 1);
  CHECK(run_cli("rate spont --E 1 --M 1 --c 1 --rel-tol 1e-30 --max-subdiv 4").exit_code == 2);
  CHECK(run_cli("no-such-subcommand").exit_code != 0);
  CHECK(run_cli("rate").exit_code != 0);
  CHECK(run_cli("sweep --var L --start 1 --stop 2 --points 3 --rate bogus").exit_code == 1);
}

TEST_CASE("cli respects the jobs environment default") {
  const std::string cmd =
      std::string("UDW_DELOCAL_JOBS=3 ") + UDW_CLI_PATH +
      " sweep --var L --start 1 --stop 2 --points 4 --rate classical --E 1 --M 1 --c 1 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  CHECK(WEXITSTATUS(pclose(pipe)) == 0);
  CHECK(out.find("classical") != std::string::npos);
}
