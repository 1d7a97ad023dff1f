// End-to-end checks of the command-line binary: file outputs, exit-code
// classes, JSON/CSV agreement, and byte-level determinism.
#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "support/test_support.hpp"
#include "telag/csv.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(TELAG_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), pipe)) result.output += buf;
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

}  // namespace

TEST_CASE("simulate writes an aligned two-column trajectory and manifest") {
  ts::ScratchDir dir("cli-sim");
  const std::string out = dir.file("traj.csv");
  const auto res = run_cli("simulate --system 1 --lag 2 --seed 7 --out " + out);
  REQUIRE(res.exit_code == 0);
  const telag::CsvTable table = telag::read_csv(out);
  REQUIRE(table.header == std::vector<std::string>{"index", "x", "y"});
  REQUIRE(table.rows.size() == 498);
  REQUIRE(file_exists(out + ".manifest.json"));
}

TEST_CASE("simulate emits a state-only column for the delayed-ar system") {
  ts::ScratchDir dir("cli-sim4");
  const std::string out = dir.file("traj4.csv");
  const auto res = run_cli("simulate --system 4 --lag 3 --seed 7 --out " + out);
  REQUIRE(res.exit_code == 0);
  REQUIRE(telag::read_csv(out).header == std::vector<std::string>{"index", "x"});
}

TEST_CASE("an unknown system id is a usage error") {
  ts::ScratchDir dir("cli-sys9");
  const auto res = run_cli("simulate --system 9 --lag 1 --out " + dir.file("x.csv"));
  REQUIRE(res.exit_code == 2);
  const auto usage = run_cli("simulate --lag 1");
  REQUIRE(usage.exit_code == 2);  // missing required options
}

TEST_CASE("scan identifies the simulated lag and emits matching csv and json") {
  ts::ScratchDir dir("cli-scan");
  const std::string traj = dir.file("sim2.csv");
  REQUIRE(run_cli("simulate --system 2 --lag 4 --seed 3 --out " + traj).exit_code == 0);

  const std::string out = dir.file("curve");
  const auto res = run_cli("scan --input " + traj + " --lag-min 1 --lag-max 8 --out " + out);
  REQUIRE(res.exit_code == 0);

  const telag::CsvTable curve = telag::read_csv(out + ".csv");
  REQUIRE(curve.header == std::vector<std::string>{"lag", "te_nats"});
  REQUIRE(curve.rows.size() == 8);

  const auto doc = nlohmann::json::parse(slurp(out + ".json"));
  REQUIRE(doc.at("curve").at("identified_lag").get<std::size_t>() == 4);
  REQUIRE(doc.at("curve").at("te_nats").size() == 8);

  // CSV and JSON encode the same values
  for (std::size_t i = 0; i < 8; ++i) {
    const double csv_value = telag::parse_double(curve.rows[i][1], "curve");
    REQUIRE(csv_value == doc.at("curve").at("te_nats").at(i).get<double>());
  }
}

TEST_CASE("scan supports the reversed direction") {
  ts::ScratchDir dir("cli-rev");
  const std::string traj = dir.file("sim1.csv");
  REQUIRE(run_cli("simulate --system 1 --lag 2 --seed 9 --out " + traj).exit_code == 0);
  const std::string out = dir.file("rev");
  REQUIRE(run_cli("scan --input " + traj + " --direction y_to_x --out " + out).exit_code == 0);
  REQUIRE(telag::read_csv(out + ".csv").rows.size() == 8);

  const std::string both = dir.file("both");
  REQUIRE(run_cli("scan --input " + traj + " --direction both --out " + both).exit_code == 0);
  REQUIRE(file_exists(both + ".x_to_y.csv"));
  REQUIRE(file_exists(both + ".y_to_x.json"));
}

TEST_CASE("scan exit codes distinguish input errors from degeneracy") {
  ts::ScratchDir dir("cli-err");
  REQUIRE(run_cli("scan --input " + dir.file("absent.csv") + " --out " + dir.file("o"))
              .exit_code == 3);

  const std::string flat = dir.file("flat.csv");
  {
    std::ofstream out(flat);
    out << "index,x,y\n";
    for (int i = 0; i < 64; ++i)
      out << i + 1 << ",1.0," << telag::format_double(0.5 + 0.01 * (i % 7)) << '\n';
  }
  const auto res = run_cli("scan --input " + flat + " --lag-max 2 --out " + dir.file("o2"));
  REQUIRE(res.exit_code == 4);
}

TEST_CASE("scan output is byte-identical across reruns") {
  ts::ScratchDir dir("cli-det");
  const std::string traj = dir.file("sim3.csv");
  REQUIRE(run_cli("simulate --system 3 --lag 2 --seed 11 --out " + traj).exit_code == 0);

  const std::string a = dir.file("a");
  const std::string b = dir.file("b");
  REQUIRE(run_cli("scan --input " + traj + " --jobs 3 --out " + a).exit_code == 0);
  REQUIRE(run_cli("scan --input " + traj + " --out " + b).exit_code == 0);
  REQUIRE(slurp(a + ".csv") == slurp(b + ".csv"));
  REQUIRE(slurp(a + ".json") == slurp(b + ".json"));

  // simulate is deterministic too
  const std::string traj2 = dir.file("sim3-again.csv");
  REQUIRE(run_cli("simulate --system 3 --lag 2 --seed 11 --out " + traj2).exit_code == 0);
  REQUIRE(slurp(traj) == slurp(traj2));
}

TEST_CASE("bits flag changes only the console display") {
  ts::ScratchDir dir("cli-bits");
  const std::string traj = dir.file("sim1.csv");
  REQUIRE(run_cli("simulate --system 1 --lag 1 --seed 13 --out " + traj).exit_code == 0);
  const std::string a = dir.file("nats");
  const std::string b = dir.file("bits");
  REQUIRE(run_cli("scan --input " + traj + " --out " + a).exit_code == 0);
  const auto res = run_cli("scan --input " + traj + " --bits --out " + b);
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.output.find("bits") != std::string::npos);
  REQUIRE(slurp(a + ".csv") == slurp(b + ".csv"));
}

TEST_CASE("repro runs a single-system suite cleanly and repeatably") {
  ts::ScratchDir dir("cli-repro");
  const std::string out_a = dir.file("a");
  const auto res = run_cli("repro --suite sim1 --out-dir " + out_a);
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.output.find("4/4 correct") != std::string::npos);
  REQUIRE(telag::read_csv(out_a + "/sim1_curves.csv").rows.size() == 32);  // 4 lags x 8 entries
  REQUIRE(file_exists(out_a + "/summary.csv"));

  const std::string out_b = dir.file("b");
  const auto rerun = run_cli("repro --suite sim1 --out-dir " + out_b);
  REQUIRE(rerun.exit_code == 0);
  REQUIRE(rerun.output == res.output);
  REQUIRE(slurp(out_a + "/sim1_curves.csv") == slurp(out_b + "/sim1_curves.csv"));
  REQUIRE(slurp(out_a + "/summary.csv") == slurp(out_b + "/summary.csv"));
}

TEST_CASE("analyze-tetouan surfaces missing columns with an input exit code") {
  ts::ScratchDir dir("cli-tet-bad");
  const std::string path = dir.file("bad.csv");
  std::ofstream(path) << "DateTime,Temperature\n10/23/2017 0:00,1\n10/23/2017 0:10,2\n";
  const auto res = run_cli("analyze-tetouan --input " + path + " --out-dir " + dir.file("out"));
  REQUIRE(res.exit_code == 3);
  REQUIRE(res.output.find("Humidity") != std::string::npos);
}
