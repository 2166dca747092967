#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "nsse/model.hpp"
#include "nsse/quad.hpp"

namespace nsse::validation {

// One pass/fail line: `measured` is compared against `limit` as described
// by `criterion` (e.g. "max rel err <= 1e-12").
struct Check {
  std::string suite;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double limit = 0.0;
  std::string criterion;
  std::string detail;
  double seconds = 0.0;
};

// W(z) against the quad-precision reference on n uniform points with
// |Re z|, |Im z| <= 50; also bounds the wall time.
std::vector<Check> faddeeva_accuracy(int n_points = 10000, std::uint64_t seed = 20240611);

// Closed-form emission density against the brute-force momentum
// quadrature of the amplitude at n random (theta, detuning, t, v, z, p_x).
Check kernel_oracle(const Model& model, int n_points = 20, std::uint64_t seed = 7);

// Fast-front spectrum (v = 1000 v_recoil, t = 5 tau_nat, theta = 0) vs the
// simultaneous-decay reference: peak within 0.5 %, +-10 gamma band within 2 %.
std::vector<Check> sse_limit(const Model& model, unsigned threads = 1);

// Front 5 packet widths ahead of the packet (v = 1 v_recoil): photon
// probability < 1e-6 and spectrum < 1e-10 of the post-transit peak.
std::vector<Check> causality(const Model& model, unsigned threads = 1);

// v = inf: reduced P_t(theta) flat within 0.5 % on 61 angles.
Check sse_flatness(const Model& model, unsigned threads = 1);

// v = 1 v_recoil, t = 300 tau_nat: max |P/<P> - 1| < 2 %.
Check asymptotic_dipole(const Model& model, unsigned threads = 1);

// v = 1 v_recoil: N_excited + N_photon in [0.95, 1.02] at t in {-10, 0, 10, 40} tau_nat.
std::vector<Check> norm_conservation(const Model& model, unsigned threads = 1);

// Angular shape at the edge z = -0.5 lambda0 for v in {1, 0.1, 10} v_recoil.
std::vector<Check> angular_signs(const Model& model, unsigned threads = 1);

// Edge at z = 0, v = 1 v_recoil, theta = 0: FWHM > 2 gamma.
Check transit_broadening(const Model& model, unsigned threads = 1);

const std::vector<std::string>& suite_names();

// Runs the named suites (all when empty); InvalidArgument on unknown names.
std::vector<Check> run_suites(const Model& model, const std::vector<std::string>& suites,
                              unsigned threads = 1);

// Fixed-width table, one line per check; returns true iff all passed.
bool print_report(const std::vector<Check>& checks, std::FILE* out);

}  // namespace nsse::validation
