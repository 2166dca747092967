// nsse: spectra and angular distributions of a moving-front-triggered
// emitter, plus the validation suites.
//
//   nsse spectrum  [--v 10] [--edge-z 0 | --t 5] [--theta 0] ...
//   nsse angular   [--v 1] [--t-min -50 --t-max 40 --t-points 91] [--edge-z -0.5]
//   nsse validate  [--suite special] ...
//
// Exit codes: 0 ok, 1 validation failure, 2 bad arguments, 3 quadrature
// did not converge.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nsse/config.hpp"
#include "nsse/csv.hpp"
#include "nsse/error.hpp"
#include "nsse/observables.hpp"
#include "nsse/parallel.hpp"
#include "nsse/special.hpp"
#include "nsse/validate.hpp"
#include "nsse/version.hpp"

namespace {

using nsse::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConvergence = 3;

constexpr double kDeg = nsse::kPi / 180.0;

struct KeyFlags {
  std::string config_path;
  std::map<std::string, std::string> values;  // key -> raw flag text
};

std::string flag_name(const std::string& key) {
  std::string f = "--" + key;
  for (char& c : f)
    if (c == '_') c = '-';
  return f;
}

void add_key_flags(CLI::App* cmd, KeyFlags& flags, const std::vector<std::string>& keys) {
  cmd->add_option("--config", flags.config_path, "key = value config file (flags override it)");
  for (const auto& key : keys)
    cmd->add_option(flag_name(key), flags.values[key], RunConfig::describe(key));
}

RunConfig resolve(CLI::App* cmd, const KeyFlags& flags) {
  RunConfig cfg;
  if (!flags.config_path.empty()) cfg.load_file(flags.config_path);
  for (const auto& key : RunConfig::keys()) {
    const auto it = flags.values.find(key);
    if (it == flags.values.end()) continue;
    if (cmd->count(flag_name(key)) > 0) cfg.set(key, it->second);
  }
  cfg.validate();
  if (cfg.threads == 0) cfg.threads = nsse::thread_count_from_env();
  return cfg;
}

std::string tag(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  std::string s = buf;
  for (char& c : s)
    if (c == '-') c = 'm';
  return s;
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const std::filesystem::path p(path);
  const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
  return (p.parent_path() / (p.stem().string() + suffix + ext)).string();
}

nsse::Metadata quad_metadata(const nsse::QuadSpec& q) {
  using nsse::format_double;
  return {{"resolved.hermite_order", std::to_string(q.hermite_order)},
          {"resolved.z_rel_tol", format_double(q.z_rel_tol)},
          {"resolved.omega_rel_tol", format_double(q.omega_rel_tol)},
          {"resolved.z_window_sigmas", format_double(q.z_window_sigmas)},
          {"resolved.omega_window_gammas", format_double(q.omega_window_gammas)},
          {"resolved.max_intervals", std::to_string(q.max_intervals)}};
}

struct Curve {
  double v;                  // v_recoil units
  std::optional<double> z;   // edge position, if given that way
  double t;                  // tau_natural units
};

int cmd_spectrum(const RunConfig& cfg, const std::string& reference) {
  const nsse::UnitSystem units = cfg.units();
  const nsse::Model model(units);
  const nsse::QuadSpec spec = cfg.quad_spec(false);
  const bool sse_ref = reference == "sse";
  if (reference != "nsse" && !sse_ref)
    throw nsse::InvalidArgument("reference: expected nsse or sse, got '" + reference + "'");

  const std::vector<double> velocities = cfg.v ? std::vector<double>{*cfg.v}
                                               : std::vector<double>{10.0, 1.0};
  std::vector<Curve> curves;
  for (double v : velocities) {
    if (cfg.t) {
      curves.push_back({v, std::nullopt, *cfg.t});
      continue;
    }
    if (std::isinf(v) || sse_ref) throw nsse::InvalidArgument("t: required for v = inf or --reference sse");
    const std::vector<double> edges = cfg.edge_z ? std::vector<double>{*cfg.edge_z}
                                                 : std::vector<double>{0.5, 0.0, -0.5};
    for (double z : edges) {
      const double t_internal = -z / units.velocity_from_v_recoil(v);
      curves.push_back({v, z, units.time_to_tau_natural(t_internal)});
    }
  }
  if (sse_ref) curves.resize(1);

  const std::vector<double> grid = nsse::linspace(cfg.omega_min, cfg.omega_max,
                                                  static_cast<std::size_t>(cfg.points));
  const nsse::Normalization norm = nsse::parse_normalization(cfg.normalize);
  const std::string base = cfg.out.empty() ? (sse_ref ? "sse_reference.csv" : "spectrum.csv") : cfg.out;

  for (const Curve& c : curves) {
    const double t = units.time_from_tau_natural(c.t);
    const double theta = cfg.theta * kDeg;
    nsse::SpectrumDataset ds;
    if (sse_ref) {
      ds = nsse::sse_spectrum(model, theta, t, grid, norm);
    } else {
      const nsse::Front front{std::isinf(c.v) ? c.v : units.velocity_from_v_recoil(c.v)};
      ds = nsse::nsse_spectrum(model, theta, t, front, spec, norm, grid, cfg.threads);
    }
    RunConfig curve_cfg = cfg;
    curve_cfg.v = sse_ref ? std::numeric_limits<double>::infinity() : c.v;
    curve_cfg.edge_z = c.z;
    curve_cfg.t = c.z ? std::nullopt : std::optional<double>(c.t);
    nsse::Metadata meta = curve_cfg.metadata();
    meta.emplace_back("reference", sse_ref ? "sse" : "nsse");
    meta.emplace_back("resolved.t_tau_nat", nsse::format_double(c.t));
    for (auto& kv : quad_metadata(spec)) meta.push_back(kv);

    std::ostringstream os;
    nsse::write_spectrum_csv(os, ds, meta);
    std::string path = base;
    if (curves.size() > 1)
      path = with_suffix(base, "_v" + tag(c.v) + (c.z ? "_edge" + tag(*c.z) : "_t" + tag(c.t)));
    nsse::write_file_atomic(path, os.str());
    std::printf("%s\n", path.c_str());
  }
  return kExitOk;
}

int cmd_angular(const RunConfig& cfg) {
  const nsse::UnitSystem units = cfg.units();
  const nsse::Model model(units);
  const bool single = cfg.edge_z.has_value() || cfg.t.has_value();
  const nsse::QuadSpec spec = cfg.quad_spec(!single);

  // Single-time mode at an edge position sweeps the three front speeds
  // unless one is given; the time sweep defaults to v = 1.
  std::vector<double> velocities;
  if (cfg.v) velocities = {*cfg.v};
  else if (cfg.edge_z) velocities = {0.1, 1.0, 10.0};
  else velocities = {1.0};

  const std::vector<double> thetas =
      nsse::linspace(0.0, nsse::kPi, static_cast<std::size_t>(cfg.theta_points));
  const std::string base = cfg.out.empty() ? "angular.csv" : cfg.out;

  for (double v : velocities) {
    if (cfg.edge_z && std::isinf(v))
      throw nsse::InvalidArgument("edge_z: undefined for v = inf (the front is everywhere); use t");
    const nsse::Front front{std::isinf(v) ? v : units.velocity_from_v_recoil(v)};
    std::vector<double> times_tau;
    if (cfg.edge_z) times_tau = {units.time_to_tau_natural(-*cfg.edge_z / front.v)};
    else if (cfg.t) times_tau = {*cfg.t};
    else times_tau = nsse::linspace(cfg.t_min, cfg.t_max, static_cast<std::size_t>(cfg.t_points));
    std::vector<double> times;
    for (double t : times_tau) times.push_back(units.time_from_tau_natural(t));

    const nsse::AngularDataset ds =
        nsse::reduced_angular(model, times, thetas, front, spec, cfg.threads);
    RunConfig curve_cfg = cfg;
    curve_cfg.v = v;
    nsse::Metadata meta = curve_cfg.metadata();
    for (auto& kv : quad_metadata(spec)) meta.push_back(kv);

    std::ostringstream os;
    nsse::write_angular_csv(os, ds, meta);
    const std::string path =
        velocities.size() > 1 ? with_suffix(base, "_v" + tag(v)) : base;
    nsse::write_file_atomic(path, os.str());
    std::printf("%s\n", path.c_str());
  }
  return kExitOk;
}

int cmd_validate(const std::vector<std::string>& suites, double fault, const KeyFlags& flags,
                 CLI::App* cmd) {
  const RunConfig cfg = resolve(cmd, flags);
  const nsse::Model model(cfg.units());
  nsse::set_faddeeva_fault(fault);
  const auto checks = nsse::validation::run_suites(model, suites, cfg.threads);
  nsse::set_faddeeva_fault(0.0);
  return nsse::validation::print_report(checks, stdout) ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spontaneous emission triggered by a moving switch-on front"};
  app.set_version_flag("--version", std::string("nsse ") + nsse::kVersion);
  app.require_subcommand(1);

  std::vector<std::string> common;
  for (const auto& k : RunConfig::keys())
    if (k != "t_min" && k != "t_max" && k != "t_points" && k != "theta_points") common.push_back(k);

  KeyFlags spectrum_flags;
  std::string reference = "nsse";
  CLI::App* spectrum = app.add_subcommand("spectrum", "Q_t(omega) on a detuning grid");
  add_key_flags(spectrum, spectrum_flags, common);
  spectrum->add_option("--reference", reference,
                       "nsse (default) or sse: analytic simultaneous-decay reference");

  KeyFlags angular_flags;
  CLI::App* angular = app.add_subcommand("angular", "reduced P_t(theta) on a (t, theta) grid");
  add_key_flags(angular, angular_flags, RunConfig::keys());

  KeyFlags validate_flags;
  std::vector<std::string> suites;
  double fault = 0.0;
  CLI::App* validate = app.add_subcommand("validate", "run the validation suites");
  validate->add_option("--suite", suites, "suite(s) to run; default all")
      ->check(CLI::IsMember(nsse::validation::suite_names()));
  validate->add_option("--inject-faddeeva-error", fault,
                       "multiply every W(z) by (1 + x) to demonstrate suite sensitivity");
  add_key_flags(validate, validate_flags,
                {"gamma", "lambda0", "v_recoil", "omega_recoil", "tau_natural_convention",
                 "packet_width", "threads"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*spectrum) return cmd_spectrum(resolve(spectrum, spectrum_flags), reference);
    if (*angular) return cmd_angular(resolve(angular, angular_flags));
    if (*validate) return cmd_validate(suites, fault, validate_flags, validate);
  } catch (const nsse::InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const nsse::ConvergenceError& e) {
    std::fprintf(stderr, "error: %s (estimate %.6g, error bound %.3g)\n", e.what(), e.estimate(),
                 e.error_bound());
    return kExitConvergence;
  } catch (const nsse::OverflowError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConvergence;
  }
  return kExitUsage;
}
