#pragma once

#include <array>
#include <complex>
#include <limits>

#include "nsse/special.hpp"
#include "nsse/units.hpp"

namespace nsse {

// Gaussian momentum-space packet alpha_0(p) ~ exp(-p^2 a^2 / 4).
struct WavePacket {
  double a;  // lambda0 units

  // Position-space standard deviation of |alpha|^2 after free evolution
  // for time tau: |a_tau^2| / (2a).
  double position_sigma(double hbar_over_m, double tau) const;
};

// Step front Theta(t + z/v) sweeping along -z.  v = inf is the
// simultaneous (SSE) case and takes its own code path.
struct Front {
  double v;  // lambda0 gamma units

  static Front simultaneous() { return Front{std::numeric_limits<double>::infinity()}; }
  bool is_simultaneous() const { return v == std::numeric_limits<double>::infinity(); }

  double tau(double t, double z) const { return is_simultaneous() ? t : t + z / v; }
  // Theta(0) = 1.
  static bool switched_on(double tau) { return tau >= 0.0; }
};

// Photon mode with k_y = 0.  Frequencies in gamma, wavenumbers in 1/lambda0.
struct ModeGeometry {
  double detuning;  // omega_k - omega0
  double theta;     // polar angle to z
  double omega_k;
  double k;
  double kx;
  double kz;
};

// Every intermediate of the closed-form kernel at one (z, p_x, t).
struct EmissionKernel {
  double tau = 0.0;
  cplx at_sq;     // a^2 - 2i (hbar/M) tau
  double delta_k = 0.0;
  cplx Delta_k;   // delta_k + i - (hbar/M) p_x k_x
  cplx b1, b2;
  cplx eta1, eta2;
  ComplexScaled F;  // undamped kernel; may exceed double range for large tau
  cplx damped_F;    // exp(-gamma tau) F, what the observables integrate
  bool limit_branch = false;
};

class Model {
 public:
  // Below this |k_z|/k the theta = pi/2 closed form replaces the bracket.
  static constexpr double kz_threshold = 1e-9;

  explicit Model(const UnitSystem& units);

  const UnitSystem& units() const { return units_; }
  const WavePacket& packet() const { return packet_; }
  double hbar_over_m() const { return units_.hbar_over_m; }

  ModeGeometry mode(double detuning, double theta) const;

  // delta_k = omega_k + hbar omega_k^2/(2 M c^2) - omega0, with the recoil
  // term written as omega_recoil (omega_k/omega0)^2.
  double delta_k(double omega_k) const;
  double delta_k_from_detuning(double detuning) const;

  // Caller gates on tau >= 0; for tau < 0 the kernel is returned as zero.
  EmissionKernel kernel(double z, double px, double t, const ModeGeometry& mode,
                        const Front& front) const;

  // Simultaneous-decay excited amplitude with g_k stripped; p in 1/lambda0.
  cplx sse_amplitude_beta(const std::array<double, 3>& p, const ModeGeometry& mode,
                          double t) const;

 private:
  UnitSystem units_;
  WavePacket packet_;
};

// The p_x-independent part of the kernel at fixed (z, t, mode, front).
// Quadrature over p_x evaluates damped(px) many times per z node.
class KernelSlice {
 public:
  KernelSlice(const Model& model, const ModeGeometry& mode, const Front& front, double t,
              double z);

  bool active() const { return active_; }
  double tau() const { return tau_; }
  cplx damped(double px) const;
  EmissionKernel full(double px) const;

 private:
  cplx Delta(double px) const;

  const Model* model_;
  const ModeGeometry* mode_;
  double z_;
  double tau_;
  bool active_;
  bool limit_;
  double delta_k_;
  cplx at_sq_, at_;
  cplx b1_, b2_;
  cplx s1_;          // b1^2/a_t^2 - tau
  cplx b2_sq_;       // b2^2/a_t^2
  cplx eta_scale_;   // a_t / (2 (hbar/M) |k_z|)
  cplx eta1_shift_, eta2_shift_;
  cplx prefactor_;   // i pi M / |k_z|
  cplx gauss_;       // exp(-z^2/a_t^2), limit branch only
};

}  // namespace nsse
