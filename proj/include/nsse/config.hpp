#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsse/quad.hpp"
#include "nsse/units.hpp"

namespace nsse {

// Everything a run depends on.  Atom parameters are SI; everything else
// is in lambda0, v_recoil, tau_natural and gamma units.  Each field has a
// config key of the same name (see keys()).
struct RunConfig {
  // Atom (SI).
  double gamma = 2.0 * kPi * 50e6;          // rad/s
  double lambda0 = 121.6e-9;                // m
  double v_recoil = 3.25;                   // m/s
  double omega_recoil = 2.0 * kPi * 13.328e6;  // rad/s
  TauConvention tau_natural_convention = TauConvention::population;

  double packet_width = 1.0;  // lambda0

  // Front; nullopt means "use the command's default sweep".
  std::optional<double> v;       // v_recoil, may be inf
  std::optional<double> edge_z;  // lambda0
  std::optional<double> t;       // tau_natural

  // Spectrum grid.
  double theta = 0.0;  // degrees
  double omega_min = -15.0;
  double omega_max = 15.0;
  int points = 601;
  std::string normalize = "peak";

  // Angular grid.
  double t_min = -50.0;
  double t_max = 40.0;
  int t_points = 91;
  int theta_points = 61;

  // Quadrature.  preset = auto picks relaxed for multi-time angular sweeps.
  std::string preset = "auto";
  std::optional<int> hermite_order;
  std::optional<double> z_rel_tol;
  std::optional<double> omega_rel_tol;
  std::optional<double> z_window_sigmas;
  std::optional<double> omega_window_gammas;
  std::optional<int> max_intervals;
  PThetaMethod p_theta_method = PThetaMethod::time_domain;

  // Execution only; not recorded in output metadata.
  std::string out;
  unsigned threads = 0;

  // Parses `value` for `key`; InvalidArgument naming the key on failure.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;

  // Flat "key = value" lines, '#' starts a comment.
  void load(std::istream& in, const std::string& source = "config");
  void load_file(const std::string& path);

  // Cross-field checks; InvalidArgument naming the offending key.
  void validate() const;

  AtomParams atom() const;
  UnitSystem units() const;
  QuadSpec quad_spec(bool sweep) const;

  // All recognised keys in documentation order.
  static const std::vector<std::string>& keys();
  // One-line description with units, for --help and the README.
  static std::string describe(const std::string& key);
  // Keys that define the physics (written to CSV metadata).
  std::vector<std::pair<std::string, std::string>> metadata() const;
};

// "inf" (any case) or a finite decimal; throws InvalidArgument naming key.
double parse_double(const std::string& key, const std::string& text, bool allow_inf = false);
int parse_int(const std::string& key, const std::string& text);

// Shortest round-trippable-enough fixed format used in metadata.
std::string format_double(double x);

}  // namespace nsse
