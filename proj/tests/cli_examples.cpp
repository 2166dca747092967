// Drives the nsse executable (path in NSSE_CLI) through its documented examples.

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

std::string cli() {
  const char* p = std::getenv("NSSE_CLI");
  REQUIRE_MESSAGE(p != nullptr, "NSSE_CLI must point at the nsse executable");
  return p;
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / "nsse_cli_examples";
  fs::create_directories(d);
  return d;
}

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = cli() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

struct Csv {
  std::map<std::string, std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Csv read_csv(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  Csv csv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find(" = ");
      if (eq != std::string::npos) csv.meta[line.substr(2, eq - 2)] = line.substr(eq + 3);
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (csv.columns.empty()) {
      csv.columns = cells;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(std::stod(c));
    csv.rows.push_back(row);
  }
  return csv;
}

}  // namespace

TEST_CASE("spectrum --v 10 --edge-z 0 writes one three-column CSV") {
  const fs::path out = scratch() / "one.csv";
  const Run r = run("spectrum --v 10 --edge-z 0 --out " + out.string());
  REQUIRE(r.code == 0);
  const Csv csv = read_csv(out);
  CHECK(csv.columns == std::vector<std::string>{"detuning_gamma", "q_norm", "lorentzian_ref"});
  CHECK(csv.rows.size() == 601);
  CHECK(csv.meta.at("normalization") == "peak");
  CHECK(csv.meta.at("v") == "10");
  CHECK(csv.meta.count("tool") == 1);
  CHECK(csv.rows.front()[0] == -15.0);
  CHECK(csv.rows.back()[0] == 15.0);
}

TEST_CASE("spectrum defaults sweep two velocities times three edge positions") {
  const fs::path out = scratch() / "sweep.csv";
  const Run r = run("spectrum --points 21 --out " + out.string());
  REQUIRE(r.code == 0);
  for (const char* name : {"sweep_v10_edge0.5.csv", "sweep_v10_edge0.csv", "sweep_v10_edgem0.5.csv",
                           "sweep_v1_edge0.5.csv", "sweep_v1_edge0.csv", "sweep_v1_edgem0.5.csv"}) {
    CAPTURE(name);
    CHECK(fs::exists(scratch() / name));
  }
}

TEST_CASE("fast front at t = 5 agrees with the SSE reference command to 0.5 %") {
  const fs::path fast = scratch() / "fast.csv";
  const fs::path ref = scratch() / "ref.csv";
  REQUIRE(run("spectrum --v 1e6 --t 5 --points 201 --omega-min -10 --omega-max 10 --out " +
              fast.string()).code == 0);
  REQUIRE(run("spectrum --reference sse --t 5 --points 201 --omega-min -10 --omega-max 10 --out " +
              ref.string()).code == 0);
  const Csv a = read_csv(fast), b = read_csv(ref);
  REQUIRE(a.rows.size() == b.rows.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows.size(); ++i) worst = std::max(worst, std::abs(a.rows[i][1] - b.rows[i][1]));
  CHECK(worst < 5e-3);
}

TEST_CASE("front 5 lambda0 ahead: raw spectrum vanishes") {
  const fs::path out = scratch() / "ahead.csv";
  REQUIRE(run("spectrum --v 1 --edge-z 5 --normalize raw --points 61 --out " + out.string()).code == 0);
  for (const auto& row : read_csv(out).rows) CHECK(row[1] < 1e-10);
}

TEST_CASE("angular: SSE rows are flat") {
  const fs::path out = scratch() / "flat.csv";
  REQUIRE(run("angular --v inf --t-min 1 --t-max 20 --t-points 4 --out " + out.string()).code == 0);
  const Csv csv = read_csv(out);
  CHECK(csv.columns == std::vector<std::string>{"t_tau_nat", "theta_deg", "p_reduced"});
  CHECK(csv.rows.size() == 4 * 61);
  for (const auto& row : csv.rows) CHECK(std::abs(row[2] - 1.0) < 5e-3);
}

TEST_CASE("angular: slow front at edge -0.5 peaks near 90 degrees") {
  const fs::path out = scratch() / "slow.csv";
  REQUIRE(run("angular --edge-z -0.5 --v 0.1 --out " + out.string()).code == 0);
  const Csv csv = read_csv(out);
  double best = -1.0, arg = -1.0;
  for (const auto& row : csv.rows)
    if (row[2] > best) best = row[2], arg = row[1];
  CHECK(arg >= 75.0);
  CHECK(arg <= 105.0);
}

TEST_CASE("angular: default time sweep uses the relaxed preset and spans -50..40") {
  const fs::path out = scratch() / "sweep_t.csv";
  REQUIRE(run("angular --v 1 --t-points 3 --theta-points 13 --out " + out.string()).code == 0);
  const Csv csv = read_csv(out);
  CHECK(csv.meta.at("preset") == "auto");
  CHECK(csv.meta.at("resolved.z_rel_tol") == "1e-05");
  CHECK(csv.rows.front()[0] == -50.0);
  CHECK(csv.rows.back()[0] == 40.0);
}

TEST_CASE("config file with flag override") {
  const fs::path cfg = scratch() / "run.cfg";
  std::ofstream(cfg) << "# test\nv = 10\nedge_z = 0\npoints = 11\ntheta = 30\n";
  const fs::path out = scratch() / "cfg.csv";
  REQUIRE(run("spectrum --config " + cfg.string() + " --theta 60 --out " + out.string()).code == 0);
  const Csv csv = read_csv(out);
  CHECK(csv.meta.at("theta") == "60");
  CHECK(csv.rows.size() == 11);
}

TEST_CASE("exit codes") {
  CHECK(run("spectrum --points abc").code == 2);
  CHECK(run("spectrum --v 10 --edge-z 0 --t 3").code == 2);
  CHECK(run("spectrum --bogus").code == 2);
  CHECK(run("angular --v inf --edge-z 0").code == 2);
  CHECK(run("validate --suite nonsense").code == 2);
  const Run conv = run("spectrum --v 1 --edge-z 0 --points 3 --max-intervals 16 --z-rel-tol 1e-15 --out " +
                       (scratch() / "conv.csv").string());
  CHECK(conv.code == 3);
  const Run help = run("--help");
  CHECK(help.code == 0);
}

TEST_CASE("validate: suite filter and sensitivity to an injected Faddeeva error") {
  const Run only = run("validate --suite oracle");
  CHECK(only.code == 0);
  CHECK(only.out.find("oracle") != std::string::npos);
  CHECK(only.out.find("special") == std::string::npos);
  CHECK(only.out.find("sse-limit") == std::string::npos);

  const Run clean = run("validate --suite special");
  CHECK(clean.code == 0);
  const Run faulty = run("validate --suite special --inject-faddeeva-error 0.01");
  CHECK(faulty.code == 1);
  CHECK(faulty.out.find("FAIL  special") != std::string::npos);
}
