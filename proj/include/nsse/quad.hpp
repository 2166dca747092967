#pragma once

#include "nsse/model.hpp"

namespace nsse {

// How P_t(theta) = int d omega Q_t is evaluated.
enum class PThetaMethod {
  // Adaptive omega quadrature of q_t_omega over the window plus a
  // Lorentzian tail estimate.
  spectral,
  // Same integral over the whole line via Parseval: omega enters the
  // amplitude only through exp(-i delta s), so the omega integral of |F|^2
  // becomes a time integral of a Gaussian and the p_x dependence (a pure
  // phase) drops out.  Treats k as constant across the line.
  time_domain,
};

struct QuadSpec {
  int hermite_order = 40;
  double z_rel_tol = 1e-7;
  double omega_rel_tol = 1e-5;
  // Half-width of the z window in position standard deviations of the
  // packet (6.8 sigma is a 1e-10 density cut).
  double z_window_sigmas = 6.8;
  double omega_window_gammas = 60.0;
  int max_intervals = 4000;
  PThetaMethod p_theta_method = PThetaMethod::time_domain;

  // Preset for large (t, theta) sweeps.
  static QuadSpec relaxed();
  // Throws InvalidArgument naming the offending field.
  void validate() const;
};

// Overall factor turning  int dp_x int dz Theta exp(-2 gamma tau - p_x^2 a^2/2) |F|^2
// into a probability density per unit omega (gamma units) and solid angle
// (before the dipole factor): 3 gamma a^2 / (32 pi^4 hbar^3).
double emission_constant(const Model& model);

struct ZWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(hi > lo); }
};

// z range holding the packet, its recoil travel and its spreading up to
// the latest elapsed switch-on time, cut at the front.
ZWindow z_window(const Model& model, double t, const Front& front, const QuadSpec& spec);

// Unnormalized Q_t(omega_k) (divide by the squared state norm).
double q_t_omega(const Model& model, const ModeGeometry& mode, double t, const Front& front,
                 const QuadSpec& spec);

// int dz Theta(tau) exp(-2 gamma tau) |F(z, p_x)|^2 at a single p_x.
double z_integral(const Model& model, const ModeGeometry& mode, double t, const Front& front,
                  double px, const QuadSpec& spec);

// Unnormalized reduced distribution P_t(theta) = int d omega Q_t, by the
// method selected in spec.
double p_theta(const Model& model, double theta, double t, const Front& front,
               const QuadSpec& spec);

struct Norms {
  double excited = 0.0;
  double photon = 0.0;
  double total() const { return excited + photon; }
};

// N_excited and N_photon with the dipole along z.
Norms norms(const Model& model, double t, const Front& front, const QuadSpec& spec,
            unsigned threads = 1);

// Brute-force inner integral of the emission density at one (z, p_x):
//   exp(-2 gamma tau) int dp_y dp_z dp_z' alpha_0 alpha_0^* L L^* e^{phases},
// with every momentum integral done numerically.  Test oracle only.
struct OracleResult {
  double value = 0.0;
  double error = 0.0;
};
OracleResult q_oracle(const Model& model, const ModeGeometry& mode, double t, const Front& front,
                      double z, double px, double rel_tol = 1e-9);

// The closed-form counterpart of q_oracle:
// (a/sqrt(2 pi))^5 exp(-p_x^2 a^2/2) exp(-2 gamma tau) |F|^2.
double kernel_density(const Model& model, const ModeGeometry& mode, double t, const Front& front,
                      double z, double px);

}  // namespace nsse
