// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned
// here.  Usage: nsse_acceptance [--criterion N]... [--cli PATH] [--workdir DIR]
// Exit status 0 iff every selected criterion passes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nsse/parallel.hpp"
#include "nsse/validate.hpp"

namespace fs = std::filesystem;
using nsse::validation::Check;

namespace {

struct Outcome {
  bool passed = true;
  std::vector<Check> checks;
};

Outcome from(std::vector<Check> checks) {
  Outcome o;
  o.checks = std::move(checks);
  for (const auto& c : o.checks) o.passed = o.passed && c.passed;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double run_timed(const std::string& cmd) {
  const auto start = std::chrono::steady_clock::now();
  const int rc = std::system(cmd.c_str());
  if (rc != 0) throw std::runtime_error("command failed (" + std::to_string(rc) + "): " + cmd);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// The six default spectra and the three-velocity angular cut into `dir`.
double generate_spectra_and_cuts(const std::string& cli, const fs::path& dir, int threads) {
  fs::create_directories(dir);
  const std::string t = " --threads " + std::to_string(threads) + " > /dev/null";
  return run_timed(cli + " spectrum --out " + (dir / "spectrum.csv").string() + t) +
         run_timed(cli + " angular --edge-z -0.5 --out " + (dir / "angular_cut.csv").string() + t);
}

Outcome determinism_and_scale(const std::string& cli, const fs::path& work) {
  fs::remove_all(work);
  const double seconds = generate_spectra_and_cuts(cli, work / "run_a", 1);
  generate_spectra_and_cuts(cli, work / "run_b", 4);
  generate_spectra_and_cuts(cli, work / "run_c", 1);
  std::size_t files = 0, identical = 0;
  for (const auto& entry : fs::directory_iterator(work / "run_a")) {
    ++files;
    const std::string a = slurp(entry.path());
    const std::string b = slurp(work / "run_b" / entry.path().filename());
    const std::string c = slurp(work / "run_c" / entry.path().filename());
    if (a == b && a == c) ++identical;
  }
  const double sweep = run_timed(cli + " angular --v 1 --out " + (work / "angular_sweep.csv").string() +
                                " > /dev/null");
  Check time13{"scale", "spectra + angular cuts generation [s]", seconds < 600.0, seconds, 600.0, "<"};
  Check same{"scale", "byte-identical files (runs, 1 vs 4 threads)",
             files == 9 && identical == files, static_cast<double>(identical),
             static_cast<double>(files), "== total of 9"};
  same.detail = std::to_string(identical) + "/" + std::to_string(files) + " identical";
  Check time2{"scale", "91x61 time sweep (relaxed) generation [s]", sweep < 3600.0, sweep, 3600.0, "<"};
  return from({time13, same, time2});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria 1-10"};
  std::vector<int> selected;
  std::string cli;
  std::string workdir = (fs::temp_directory_path() / "nsse_acceptance").string();
  app.add_option("--criterion", selected, "criteria to run (default all)")
      ->check(CLI::Range(1, 10));
  app.add_option("--cli", cli, "path of the nsse executable (criterion 10)");
  app.add_option("--workdir", workdir, "scratch directory for criterion 10");
  CLI11_PARSE(app, argc, argv);

  const nsse::Model model(
      nsse::to_internal(nsse::AtomParams::hydrogen_lyman_alpha(), 121.6e-9));
  const unsigned threads = nsse::thread_count_from_env();
  namespace v = nsse::validation;

  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Faddeeva rel err <= 1e-12 on 1e4 points, < 10 s", [] { return from(v::faddeeva_accuracy()); }},
      {2, "closed form vs brute force <= 1e-4 at 20 points",
       [&] { return from({v::kernel_oracle(model, 20)}); }},
      {3, "SSE limit: peak 0.5 %, +-10 gamma 2 %", [&] { return from(v::sse_limit(model, threads)); }},
      {4, "causality: P_photon < 1e-6, spectrum < 1e-10 of peak",
       [&] { return from(v::causality(model, threads)); }},
      {5, "SSE reduced distribution flat within 0.5 %",
       [&] { return from({v::sse_flatness(model, threads)}); }},
      {6, "v=1, t=300: max |P/<P>-1| < 2 %", [&] { return from({v::asymptotic_dipole(model, threads)}); }},
      {7, "norm in [0.95, 1.02] at t = -10, 0, 10, 40",
       [&] { return from(v::norm_conservation(model, threads)); }},
      {8, "angular signs at edge z = -0.5", [&] { return from(v::angular_signs(model, threads)); }},
      {9, "transit broadening: FWHM > 2 gamma", [&] { return from({v::transit_broadening(model, threads)}); }},
      {10, "determinism & scale",
       [&] {
         if (cli.empty()) {
           Check c{"scale", "needs --cli", false, 0.0, 0.0, "-"};
           return from({c});
         }
         return determinism_and_scale(cli, workdir);
       }},
  };

  const std::set<int> want(selected.begin(), selected.end());
  bool all = true;
  for (const auto& c : criteria) {
    if (!want.empty() && !want.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      Check fail{"error", e.what(), false, 0.0, 0.0, "-"};
      o = from({fail});
    }
    all = all && o.passed;
    std::printf("%s criterion %2d: %s\n", o.passed ? "PASS" : "FAIL", c.id, c.title);
    for (const auto& ch : o.checks) {
      const bool relational = ch.criterion == "<" || ch.criterion == "<=" || ch.criterion == ">";
      char limit[32] = "";
      if (relational) std::snprintf(limit, sizeof limit, " %.6g", ch.limit);
      std::printf("       %s %-44s measured %.6g (%s%s)", ch.passed ? "ok  " : "FAIL",
                  ch.name.c_str(), ch.measured, ch.criterion.c_str(), limit);
      if (!ch.detail.empty()) std::printf("  [%s]", ch.detail.c_str());
      std::printf("\n");
    }
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
