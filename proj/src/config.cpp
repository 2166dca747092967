#include "nsse/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>

#include "nsse/error.hpp"

namespace nsse {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

template <class T>
std::string opt(const std::optional<T>& x) {
  if (!x) return "";
  if constexpr (std::is_same_v<T, int>) return std::to_string(*x);
  else return format_double(*x);
}

}  // namespace

double parse_double(const std::string& key, const std::string& text, bool allow_inf) {
  const std::string s = trim(text);
  const std::string l = lower(s);
  if (l == "inf" || l == "+inf" || l == "infinity") {
    if (!allow_inf) throw InvalidArgument(key + ": infinity not allowed");
    return std::numeric_limits<double>::infinity();
  }
  double x = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(x))
    throw InvalidArgument(key + ": expected a number, got '" + s + "'");
  return x;
}

int parse_int(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  int x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument(key + ": expected an integer, got '" + s + "'");
  return x;
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // also folds -0
  char buf[64];
  if (x == std::trunc(x) && std::abs(x) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", x);
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char b2[64];
    std::snprintf(b2, sizeof b2, "%.*g", prec, x);
    if (std::strtod(b2, nullptr) == x) return b2;
  }
  return buf;
}

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = {
      "gamma", "lambda0", "v_recoil", "omega_recoil", "tau_natural_convention",
      "packet_width", "v", "edge_z", "t", "theta", "omega_min", "omega_max", "points",
      "normalize", "t_min", "t_max", "t_points", "theta_points", "preset", "hermite_order",
      "z_rel_tol", "omega_rel_tol", "z_window_sigmas", "omega_window_gammas", "max_intervals",
      "p_theta_method",
      "out", "threads"};
  return k;
}

std::string RunConfig::describe(const std::string& key) {
  static const std::vector<std::pair<std::string, std::string>> text = {
      {"gamma", "decay rate gamma [rad/s]"},
      {"lambda0", "transition wavelength [m]"},
      {"v_recoil", "velocity unit v_recoil [m/s]"},
      {"omega_recoil", "recoil frequency hbar k0^2/(2M) [rad/s]"},
      {"tau_natural_convention", "tau_natural = 1/(2 gamma) (half) or 1/gamma (full)"},
      {"packet_width", "packet width a [lambda0]"},
      {"v", "front velocity [v_recoil], 'inf' = simultaneous decay"},
      {"edge_z", "front edge position, sets t = -edge_z/v [lambda0]"},
      {"t", "time [tau_natural]"},
      {"theta", "photon polar angle to the front motion axis [deg]"},
      {"omega_min", "lowest detuning omega - omega0 [gamma]"},
      {"omega_max", "highest detuning omega - omega0 [gamma]"},
      {"points", "detuning grid points"},
      {"normalize", "spectrum normalization: peak | area | raw"},
      {"t_min", "time sweep start [tau_natural]"},
      {"t_max", "time sweep end [tau_natural]"},
      {"t_points", "time sweep points"},
      {"theta_points", "angle grid points over [0, 180] deg"},
      {"preset", "tolerances: auto | default | relaxed"},
      {"hermite_order", "Gauss-Hermite order for p_x"},
      {"z_rel_tol", "relative tolerance of the z integral"},
      {"omega_rel_tol", "relative tolerance of the omega integral (spectral P)"},
      {"z_window_sigmas", "z window half-width in packet standard deviations"},
      {"omega_window_gammas", "omega window half-width [gamma] (spectral P)"},
      {"max_intervals", "panel limit of each adaptive integral"},
      {"p_theta_method", "P_t(theta) evaluation: time_domain | spectral"},
      {"out", "output CSV path (multi-curve runs add suffixes)"},
      {"threads", "worker threads, 0 = NSSE_THREADS or all cores"},
  };
  for (const auto& [k, d] : text)
    if (k == key) return d;
  throw InvalidArgument("unknown config key '" + key + "'");
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const std::string v_ = trim(value);
  const bool unset = v_.empty() || lower(v_) == "none";
  auto optional_double = [&](std::optional<double>& field, bool allow_inf) {
    if (unset) field.reset();
    else field = parse_double(key, v_, allow_inf);
  };
  auto optional_int = [&](std::optional<int>& field) {
    if (unset) field.reset();
    else field = parse_int(key, v_);
  };
  if (key == "gamma") gamma = parse_double(key, v_);
  else if (key == "lambda0") lambda0 = parse_double(key, v_);
  else if (key == "v_recoil") v_recoil = parse_double(key, v_);
  else if (key == "omega_recoil") omega_recoil = parse_double(key, v_);
  else if (key == "tau_natural_convention") {
    const std::string l = lower(v_);
    if (l == "half") tau_natural_convention = TauConvention::population;
    else if (l == "full") tau_natural_convention = TauConvention::amplitude;
    else throw InvalidArgument(key + ": expected half or full, got '" + v_ + "'");
  }
  else if (key == "packet_width") packet_width = parse_double(key, v_);
  else if (key == "v") optional_double(v, true);
  else if (key == "edge_z") optional_double(edge_z, false);
  else if (key == "t") optional_double(t, false);
  else if (key == "theta") theta = parse_double(key, v_);
  else if (key == "omega_min") omega_min = parse_double(key, v_);
  else if (key == "omega_max") omega_max = parse_double(key, v_);
  else if (key == "points") points = parse_int(key, v_);
  else if (key == "normalize") {
    const std::string l = lower(v_);
    if (l != "peak" && l != "area" && l != "raw")
      throw InvalidArgument(key + ": expected peak, area or raw, got '" + v_ + "'");
    normalize = l;
  }
  else if (key == "t_min") t_min = parse_double(key, v_);
  else if (key == "t_max") t_max = parse_double(key, v_);
  else if (key == "t_points") t_points = parse_int(key, v_);
  else if (key == "theta_points") theta_points = parse_int(key, v_);
  else if (key == "preset") {
    const std::string l = lower(v_);
    if (l != "auto" && l != "default" && l != "relaxed")
      throw InvalidArgument(key + ": expected auto, default or relaxed, got '" + v_ + "'");
    preset = l;
  }
  else if (key == "hermite_order") optional_int(hermite_order);
  else if (key == "z_rel_tol") optional_double(z_rel_tol, false);
  else if (key == "omega_rel_tol") optional_double(omega_rel_tol, false);
  else if (key == "z_window_sigmas") optional_double(z_window_sigmas, false);
  else if (key == "omega_window_gammas") optional_double(omega_window_gammas, false);
  else if (key == "max_intervals") optional_int(max_intervals);
  else if (key == "p_theta_method") {
    const std::string l = lower(v_);
    if (l == "time_domain") p_theta_method = PThetaMethod::time_domain;
    else if (l == "spectral") p_theta_method = PThetaMethod::spectral;
    else throw InvalidArgument(key + ": expected time_domain or spectral, got '" + v_ + "'");
  }
  else if (key == "out") out = v_;
  else if (key == "threads") {
    const int n = parse_int(key, v_);
    if (n < 0) throw InvalidArgument("threads: must be >= 0");
    threads = static_cast<unsigned>(n);
  }
  else throw InvalidArgument("unknown config key '" + key + "'");
}

std::string RunConfig::get(const std::string& key) const {
  if (key == "gamma") return format_double(gamma);
  if (key == "lambda0") return format_double(lambda0);
  if (key == "v_recoil") return format_double(v_recoil);
  if (key == "omega_recoil") return format_double(omega_recoil);
  if (key == "tau_natural_convention")
    return tau_natural_convention == TauConvention::population ? "half" : "full";
  if (key == "packet_width") return format_double(packet_width);
  if (key == "v") return opt(v);
  if (key == "edge_z") return opt(edge_z);
  if (key == "t") return opt(t);
  if (key == "theta") return format_double(theta);
  if (key == "omega_min") return format_double(omega_min);
  if (key == "omega_max") return format_double(omega_max);
  if (key == "points") return std::to_string(points);
  if (key == "normalize") return normalize;
  if (key == "t_min") return format_double(t_min);
  if (key == "t_max") return format_double(t_max);
  if (key == "t_points") return std::to_string(t_points);
  if (key == "theta_points") return std::to_string(theta_points);
  if (key == "preset") return preset;
  if (key == "hermite_order") return opt(hermite_order);
  if (key == "z_rel_tol") return opt(z_rel_tol);
  if (key == "omega_rel_tol") return opt(omega_rel_tol);
  if (key == "z_window_sigmas") return opt(z_window_sigmas);
  if (key == "omega_window_gammas") return opt(omega_window_gammas);
  if (key == "max_intervals") return opt(max_intervals);
  if (key == "p_theta_method")
    return p_theta_method == PThetaMethod::spectral ? "spectral" : "time_domain";
  if (key == "out") return out;
  if (key == "threads") return std::to_string(threads);
  throw InvalidArgument("unknown config key '" + key + "'");
}

void RunConfig::load(std::istream& in, const std::string& source) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument(source + ":" + std::to_string(lineno) + ": expected key = value");
    set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("config: cannot open '" + path + "'");
  load(in, path);
}

void RunConfig::validate() const {
  auto positive = [](const char* key, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument(std::string(key) + ": must be positive");
  };
  positive("gamma", gamma);
  positive("lambda0", lambda0);
  positive("v_recoil", v_recoil);
  positive("omega_recoil", omega_recoil);
  positive("packet_width", packet_width);
  if (v && !(*v > 0.0)) throw InvalidArgument("v: must be positive (or inf)");
  if (edge_z && t) throw InvalidArgument("edge_z: give either edge_z or t, not both");
  if (edge_z && v && std::isinf(*v))
    throw InvalidArgument("edge_z: undefined for v = inf (the front is everywhere); use t");
  if (!(omega_max > omega_min)) throw InvalidArgument("omega_max: must exceed omega_min");
  if (points < 2) throw InvalidArgument("points: must be >= 2");
  if (t_points < 1) throw InvalidArgument("t_points: must be >= 1");
  if (t_points > 1 && !(t_max > t_min)) throw InvalidArgument("t_max: must exceed t_min");
  if (theta_points < 2) throw InvalidArgument("theta_points: must be >= 2");
  if (theta < 0.0 || theta > 180.0) throw InvalidArgument("theta: must lie in [0, 180] degrees");
  try {
    atom().validate();
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(std::string("v_recoil/omega_recoil: ") + e.what());
  }
  quad_spec(false).validate();
}

AtomParams RunConfig::atom() const {
  return AtomParams{gamma, lambda0, v_recoil, omega_recoil};
}

UnitSystem RunConfig::units() const {
  return to_internal(atom(), packet_width * lambda0, tau_natural_convention);
}

QuadSpec RunConfig::quad_spec(bool sweep) const {
  QuadSpec s;
  if (preset == "relaxed" || (preset == "auto" && sweep)) s = QuadSpec::relaxed();
  if (hermite_order) s.hermite_order = *hermite_order;
  if (z_rel_tol) s.z_rel_tol = *z_rel_tol;
  if (omega_rel_tol) s.omega_rel_tol = *omega_rel_tol;
  if (z_window_sigmas) s.z_window_sigmas = *z_window_sigmas;
  if (omega_window_gammas) s.omega_window_gammas = *omega_window_gammas;
  if (max_intervals) s.max_intervals = *max_intervals;
  s.p_theta_method = p_theta_method;
  return s;
}

std::vector<std::pair<std::string, std::string>> RunConfig::metadata() const {
  std::vector<std::pair<std::string, std::string>> out_;
  for (const auto& k : keys()) {
    if (k == "out" || k == "threads") continue;
    out_.emplace_back(k, get(k));
  }
  return out_;
}

}  // namespace nsse
