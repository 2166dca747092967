#include "nsse/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "nsse/error.hpp"
#include "nsse/integrate.hpp"
#include "nsse/parallel.hpp"

namespace nsse {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr cplx kI(0.0, 1.0);

// Breakpoints: fine panels (width ~ sigma) around each feature, then
// geometrically growing panels out to the window edges.
std::vector<double> graded_breakpoints(double lo, double hi,
                                       const std::vector<std::pair<double, double>>& features) {
  std::vector<double> pts{lo, hi};
  for (const auto& [center, sigma] : features) {
    if (!(sigma > 0.0) || !std::isfinite(center)) continue;
    for (int k = -8; k <= 8; ++k) pts.push_back(center + k * sigma);
    double step = sigma;
    for (double x = center + 8 * sigma; x < hi; x += step, step *= 1.5) pts.push_back(x);
    step = sigma;
    for (double x = center - 8 * sigma; x > lo; x -= step, step *= 1.5) pts.push_back(x);
  }
  std::vector<double> inside;
  for (double p : pts)
    if (p >= lo && p <= hi) inside.push_back(p);
  std::sort(inside.begin(), inside.end());
  // Merge points closer than a tiny fraction of the span.
  const double eps = 1e-12 * std::max(1.0, hi - lo);
  std::vector<double> out;
  for (double p : inside)
    if (out.empty() || p - out.back() > eps) out.push_back(p);
  if (out.back() < hi) out.back() = hi;
  return out;
}

struct HermiteNodes {
  std::vector<double> px;
  std::vector<double> weight;
};

// Nodes for int dp_x exp(-p_x^2 a^2/2) f(p_x).
HermiteNodes hermite_nodes(int order, double a) {
  const GaussHermite gh(order);
  HermiteNodes out;
  for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
    out.px.push_back(kSqrt2 * gh.nodes[i] / a);
    out.weight.push_back(kSqrt2 * gh.weights[i] / a);
  }
  return out;
}

double z_integrate(const Model& model, const ModeGeometry& mode, double t, const Front& front,
                   const HermiteNodes& nodes, const QuadSpec& spec) {
  const ZWindow win = z_window(model, t, front, spec);
  if (win.empty()) return 0.0;

  const bool px_free = mode.kx == 0.0;
  const double weight_sum = std::accumulate(nodes.weight.begin(), nodes.weight.end(), 0.0);
  auto integrand = [&](double z) {
    const KernelSlice slice(model, mode, front, t, z);
    if (!slice.active()) return 0.0;
    if (px_free) return weight_sum * std::norm(slice.damped(0.0));
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.px.size(); ++i)
      acc += nodes.weight[i] * std::norm(slice.damped(nodes.px[i]));
    return acc;
  };

  const double h = model.hbar_over_m();
  const WavePacket& packet = model.packet();
  std::vector<std::pair<double, double>> features;
  features.emplace_back(0.0, packet.position_sigma(h, 0.0));
  // Recoiled ground-state packet: z + (hbar k_z/M) tau(z) = 0.
  double z_star = -h * mode.kz * t;
  if (!front.is_simultaneous()) {
    const double denom = 1.0 + h * mode.kz / front.v;
    z_star = std::abs(denom) > 1e-12 ? z_star / denom : win.hi;
  }
  const double tau_star = std::max(0.0, front.tau(t, std::clamp(z_star, win.lo, win.hi)));
  features.emplace_back(std::clamp(z_star, win.lo, win.hi), packet.position_sigma(h, tau_star));
  if (!front.is_simultaneous()) features.emplace_back(win.lo, packet.position_sigma(h, 0.0));

  const std::vector<double> bp = graded_breakpoints(win.lo, win.hi, features);
  const Estimate est =
      integrate_adaptive(integrand, std::span<const double>(bp), 1e-300, spec.z_rel_tol,
                         spec.max_intervals);
  if (!est.converged)
    throw ConvergenceError("z integral did not converge", est.value, est.error);
  return est.value;
}

}  // namespace

QuadSpec QuadSpec::relaxed() {
  QuadSpec s;
  s.hermite_order = 16;
  s.z_rel_tol = 1e-5;
  s.omega_rel_tol = 1e-3;
  return s;
}

void QuadSpec::validate() const {
  auto tol = [](double x, const char* name) {
    if (!(x > 0.0 && x < 1.0)) throw InvalidArgument(std::string(name) + " must lie in (0, 1)");
  };
  if (hermite_order < 8) throw InvalidArgument("hermite_order must be >= 8");
  tol(z_rel_tol, "z_rel_tol");
  tol(omega_rel_tol, "omega_rel_tol");
  if (!(z_window_sigmas > 0.0)) throw InvalidArgument("z_window_sigmas must be positive");
  if (!(omega_window_gammas > 0.0)) throw InvalidArgument("omega_window_gammas must be positive");
  if (max_intervals < 16) throw InvalidArgument("max_intervals must be >= 16");
}

double emission_constant(const Model& model) {
  const double a = model.packet().a;
  return 3.0 * a * a / (32.0 * std::pow(kPi, 4));
}

ZWindow z_window(const Model& model, double t, const Front& front, const QuadSpec& spec) {
  const double h = model.hbar_over_m();
  const WavePacket& packet = model.packet();
  const double n = spec.z_window_sigmas;
  const double sigma0 = packet.position_sigma(h, 0.0);
  // Latest switch-on time experienced by any non-negligible part of the packet.
  const double elapsed = std::max(0.0, front.is_simultaneous() ? t : t + n * sigma0 / front.v);
  const double reach = n * packet.position_sigma(h, elapsed) + model.units().recoil_velocity() *
                                                                   elapsed * 1.001;
  ZWindow w{-reach, reach};
  if (!front.is_simultaneous()) w.lo = std::max(w.lo, -front.v * t);
  return w;
}

double z_integral(const Model& model, const ModeGeometry& mode, double t, const Front& front,
                  double px, const QuadSpec& spec) {
  HermiteNodes single{{px}, {1.0}};
  return z_integrate(model, mode, t, front, single, spec);
}

double q_t_omega(const Model& model, const ModeGeometry& mode, double t, const Front& front,
                 const QuadSpec& spec) {
  const HermiteNodes nodes = hermite_nodes(spec.hermite_order, model.packet().a);
  return emission_constant(model) * z_integrate(model, mode, t, front, nodes, spec);
}

namespace {

double p_theta_spectral(const Model& model, double theta, double t, const Front& front,
                        const QuadSpec& spec) {
  const HermiteNodes nodes = hermite_nodes(spec.hermite_order, model.packet().a);
  const double K = emission_constant(model);
  auto q = [&](double detuning) {
    return K * z_integrate(model, model.mode(detuning, theta), t, front, nodes, spec);
  };
  // Line center sits where delta_k = 0, i.e. one recoil shift below omega0.
  const double center = -model.units().eps_recoil;
  const double W = spec.omega_window_gammas;
  std::vector<double> bp{-W, W};
  for (double d : {1.0, 4.0, 16.0}) {
    if (center - d > -W) bp.push_back(center - d);
    if (center + d < W) bp.push_back(center + d);
  }
  std::sort(bp.begin(), bp.end());
  const Estimate est =
      integrate_adaptive(q, std::span<const double>(bp), 1e-300, spec.omega_rel_tol,
                         spec.max_intervals);
  if (!est.converged)
    throw ConvergenceError("omega integral did not converge", est.value, est.error);
  // Lorentzian tails beyond the window: Q ~ C / (omega - center)^2.
  const double right = W - center;
  const double left = W + center;
  const double tail = q(W) * right + q(-W) * left;
  return est.value + tail;
}

// With g = hbar k_z/M and A = a^2 - 2 i hbar tau/M,
//   P = 3 a sqrt(2 pi)/(4 pi^2) int dz Theta(tau)/|A| int_0^tau du e^{-2u}
//         exp(-2 a^2 (z + g (tau - u))^2 / |A|^2).
double p_theta_time_domain(const Model& model, double theta, double t, const Front& front,
                           const QuadSpec& spec) {
  const ZWindow win = z_window(model, t, front, spec);
  if (win.empty()) return 0.0;
  const double a = model.packet().a;
  const double h = model.hbar_over_m();
  const double g = h * model.units().k0 * std::cos(theta);
  // e^{-2u} < 1e-26 beyond u = 30.
  constexpr double kDecayCut = 30.0;

  auto integrand = [&](double z) {
    const double tau = front.tau(t, z);
    if (!Front::switched_on(tau) || tau == 0.0) return 0.0;
    const double absA = std::abs(cplx(a * a, -2.0 * h * tau));
    const double c = 2.0 * a * a / (absA * absA);
    const double w0 = z + g * tau;
    auto inner = [&](double u) {
      const double w = w0 - g * u;
      return std::exp(-2.0 * u - c * w * w);
    };
    const double top = std::min(tau, kDecayCut);
    std::vector<double> bp{0.0};
    for (double x : {0.5, 2.0, 6.0, 15.0})
      if (x < top) bp.push_back(x);
    bp.push_back(top);
    const Estimate est = integrate_adaptive(inner, std::span<const double>(bp), 1e-300,
                                            1e-3 * spec.z_rel_tol, spec.max_intervals);
    if (!est.converged)
      throw ConvergenceError("emission-time integral did not converge", est.value, est.error);
    return est.value / absA;
  };

  const WavePacket& packet = model.packet();
  std::vector<std::pair<double, double>> features;
  features.emplace_back(0.0, packet.position_sigma(h, 0.0));
  double z_star = -g * t;
  if (!front.is_simultaneous()) {
    const double denom = 1.0 + g / front.v;
    z_star = std::abs(denom) > 1e-12 ? z_star / denom : win.hi;
  }
  const double tau_star = std::max(0.0, front.tau(t, std::clamp(z_star, win.lo, win.hi)));
  features.emplace_back(std::clamp(z_star, win.lo, win.hi), packet.position_sigma(h, tau_star));
  if (!front.is_simultaneous()) features.emplace_back(win.lo, packet.position_sigma(h, 0.0));
  const std::vector<double> bp = graded_breakpoints(win.lo, win.hi, features);
  const Estimate est = integrate_adaptive(integrand, std::span<const double>(bp), 1e-300,
                                          spec.z_rel_tol, spec.max_intervals);
  if (!est.converged)
    throw ConvergenceError("z integral did not converge", est.value, est.error);
  return 3.0 * a * std::sqrt(2.0 * kPi) / (4.0 * kPi * kPi) * est.value;
}

}  // namespace

double p_theta(const Model& model, double theta, double t, const Front& front,
               const QuadSpec& spec) {
  return spec.p_theta_method == PThetaMethod::spectral
             ? p_theta_spectral(model, theta, t, front, spec)
             : p_theta_time_domain(model, theta, t, front, spec);
}

Norms norms(const Model& model, double t, const Front& front, const QuadSpec& spec,
            unsigned threads) {
  const double h = model.hbar_over_m();
  const WavePacket& packet = model.packet();
  Norms out;

  // Excited population: spreading Gaussian marginal, damped where switched on.
  {
    const double n = spec.z_window_sigmas;
    const double sigma0 = packet.position_sigma(h, 0.0);
    const double tmax = front.is_simultaneous()
                            ? std::abs(t)
                            : std::abs(t) + n * sigma0 / front.v;
    const double reach = n * packet.position_sigma(h, tmax);
    auto density = [&](double z) {
      const double tau = front.tau(t, z);
      const double s = packet.position_sigma(h, tau);
      const double rho = std::exp(-0.5 * z * z / (s * s)) / (std::sqrt(2.0 * kPi) * s);
      return Front::switched_on(tau) ? rho * std::exp(-2.0 * tau) : rho;
    };
    std::vector<double> bp{-reach, reach};
    for (int k = -8; k <= 8; ++k) bp.push_back(k * sigma0);
    if (!front.is_simultaneous() && -front.v * t > -reach && -front.v * t < reach)
      bp.push_back(-front.v * t);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::remove_if(bp.begin(), bp.end(),
                            [&](double x) { return x < -reach || x > reach; }),
             bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    const Estimate est = integrate_adaptive(density, std::span<const double>(bp), 1e-300,
                                            spec.z_rel_tol, spec.max_intervals);
    if (!est.converged)
      throw ConvergenceError("excited-state norm did not converge", est.value, est.error);
    out.excited = est.value;
  }

  // Photon part: int dOmega sin^2(theta) P_t(theta), dipole along z; in
  // u = cos(theta) the azimuth-integrated weight is 2 pi (1 - u^2).
  {
    const GaussLegendre gl(24);
    const std::vector<double> values = parallel_map<double>(
        gl.nodes.size(),
        [&](std::size_t i) {
          const double u = gl.nodes[i];
          return 2.0 * kPi * (1.0 - u * u) * p_theta(model, std::acos(u), t, front, spec);
        },
        threads);
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) acc += gl.weights[i] * values[i];
    out.photon = acc;
  }
  return out;
}

double kernel_density(const Model& model, const ModeGeometry& mode, double t, const Front& front,
                      double z, double px) {
  const KernelSlice slice(model, mode, front, t, z);
  if (!slice.active()) return 0.0;
  const double a = model.packet().a;
  return std::pow(a / std::sqrt(2.0 * kPi), 5) * std::exp(-px * px * a * a / 2.0) *
         std::norm(slice.damped(px));
}

OracleResult q_oracle(const Model& model, const ModeGeometry& mode, double t, const Front& front,
                      double z, double px, double rel_tol) {
  const double tau = front.tau(t, z);
  if (!Front::switched_on(tau)) return {};
  const double a = model.packet().a;
  const double h = model.hbar_over_m();
  const double delta = model.delta_k_from_detuning(mode.detuning);

  // exp(-gamma tau) * int dp_z e^{i p_z z + i p_z^2 tau/(2M)} alpha_0-factor L(p)
  auto integrand = [&](double pz) {
    const cplx X(h * (px * mode.kx + pz * mode.kz) - delta, -1.0);
    // exp(-tau) (1 - exp(i X tau)) / X, with exp(-tau) exp(i X tau) = exp(i Re(X) tau)
    const cplx L = (std::exp(-tau) - std::polar(1.0, X.real() * tau)) / X;
    const cplx phase = std::exp(kI * (pz * z + 0.5 * h * pz * pz * tau) - 0.25 * pz * pz * a * a);
    return phase * L;
  };
  const double cut = 12.0 / a;
  const std::array<double, 5> bp{-cut, -cut / 3, 0.0, cut / 3, cut};
  const Estimate re = integrate_adaptive([&](double p) { return integrand(p).real(); },
                                         std::span<const double>(bp), 1e-15, rel_tol, 20000);
  const Estimate im = integrate_adaptive([&](double p) { return integrand(p).imag(); },
                                         std::span<const double>(bp), 1e-15, rel_tol, 20000);
  if (!re.converged || !im.converged)
    throw ConvergenceError("oracle p_z integral did not converge", re.value, re.error + im.error);
  const Estimate py = integrate_adaptive(
      [&](double p) { return std::exp(-0.5 * p * p * a * a); }, -cut, cut, 1e-300, rel_tol, 2000);

  // The p_z and p_z' integrals factor into |G|^2 on a tensor-product rule.
  const double g2 = re.value * re.value + im.value * im.value;
  const double pref = std::pow(a / std::sqrt(2.0 * kPi), 6) * std::exp(-px * px * a * a / 2.0);
  OracleResult r;
  r.value = pref * py.value * g2;
  const double g = std::sqrt(g2);
  r.error = pref * py.value * (2.0 * g * (re.error + im.error)) + r.value * py.error / py.value;
  return r;
}

}  // namespace nsse
