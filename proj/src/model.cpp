#include "nsse/model.hpp"

#include <cmath>

namespace nsse {

namespace {
constexpr double kSqrtPi = 1.77245385090551602730;
constexpr cplx kI(0.0, 1.0);
}  // namespace

double WavePacket::position_sigma(double hbar_over_m, double tau) const {
  return std::hypot(a * a, 2.0 * hbar_over_m * tau) / (2.0 * a);
}

Model::Model(const UnitSystem& units) : units_(units), packet_{units.packet_width} {}

ModeGeometry Model::mode(double detuning, double theta) const {
  ModeGeometry m{};
  m.detuning = detuning;
  m.theta = theta;
  m.omega_k = units_.omega0 + detuning;
  m.k = units_.k0 * (m.omega_k / units_.omega0);
  m.kx = m.k * std::sin(theta);
  m.kz = m.k * std::cos(theta);
  return m;
}

double Model::delta_k(double omega_k) const {
  return delta_k_from_detuning(omega_k - units_.omega0);
}

double Model::delta_k_from_detuning(double detuning) const {
  const double ratio = 1.0 + detuning / units_.omega0;
  return detuning + units_.eps_recoil * ratio * ratio;
}

EmissionKernel Model::kernel(double z, double px, double t, const ModeGeometry& mode,
                             const Front& front) const {
  return KernelSlice(*this, mode, front, t, z).full(px);
}

cplx Model::sse_amplitude_beta(const std::array<double, 3>& p, const ModeGeometry& mode,
                               double t) const {
  if (t < 0.0) return 0.0;
  const double h = units_.hbar_over_m;
  const double pk = p[0] * mode.kx + p[2] * mode.kz;
  const double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
  // gamma + s0 - s_k = 1 + i (h p.k - h k^2/2 - (omega_k - omega0))
  const cplx rate(1.0, h * pk - 0.5 * h * mode.k * mode.k - mode.detuning);
  // s_k = i (h |p - k|^2 / 2 - omega0/2 + omega_k)
  const double pmk2 = p2 - 2.0 * pk + mode.k * mode.k;
  const double sk_phase = 0.5 * h * pmk2 - 0.5 * units_.omega0 + mode.omega_k;
  const cplx e_sk = std::polar(1.0, -std::fmod(sk_phase * t, 2.0 * kPi));
  return -e_sk * (std::exp(-rate * t) - 1.0) / rate;
}

KernelSlice::KernelSlice(const Model& model, const ModeGeometry& mode, const Front& front,
                         double t, double z)
    : model_(&model), mode_(&mode), z_(z), tau_(front.tau(t, z)) {
  active_ = Front::switched_on(tau_);
  if (!active_) return;
  const double h = model.hbar_over_m();
  const double a = model.packet().a;
  delta_k_ = model.delta_k_from_detuning(mode.detuning);
  at_sq_ = cplx(a * a, -2.0 * h * tau_);
  at_ = std::sqrt(at_sq_);
  b1_ = kI * z;
  b2_ = kI * (z + h * mode.kz * tau_);
  limit_ = std::abs(mode.kz) < Model::kz_threshold * mode.k;
  if (limit_) {
    gauss_ = std::exp(-z * z / at_sq_);
    return;
  }
  const double akz = std::abs(mode.kz);
  s1_ = b1_ * b1_ / at_sq_ - tau_;
  b2_sq_ = b2_ * b2_ / at_sq_;
  eta_scale_ = at_ / (2.0 * h * akz);
  const cplx drift = 2.0 * h * mode.kz / at_sq_;
  eta1_shift_ = eta_scale_ * b1_ * drift;
  eta2_shift_ = eta_scale_ * b2_ * drift;
  prefactor_ = kI * kPi / (h * akz);
}

cplx KernelSlice::Delta(double px) const {
  return cplx(delta_k_ - model_->hbar_over_m() * px * mode_->kx, 1.0);
}

cplx KernelSlice::damped(double px) const {
  if (!active_) return 0.0;
  const cplx D = Delta(px);
  // exp(-tau) exp(-i Delta tau) = exp(-i Re(Delta) tau) since Im(Delta) = 1.
  const cplx late_phase = std::polar(1.0, -D.real() * tau_);
  if (limit_) {
    return -2.0 * kSqrtPi / (at_ * D) * gauss_ * (std::exp(-tau_) - late_phase);
  }
  const cplx eta1 = eta_scale_ * D - eta1_shift_;
  const cplx eta2 = eta_scale_ * D - eta2_shift_;
  const ComplexScaled t1 = scaled_exp_w(s1_, eta1);
  const ComplexScaled t2 = scaled_exp_w(b2_sq_ + cplx(0.0, -D.real() * tau_), eta2);
  return prefactor_ * (t1 - t2).value();
}

EmissionKernel KernelSlice::full(double px) const {
  EmissionKernel k;
  k.tau = tau_;
  if (!active_) return k;
  k.at_sq = at_sq_;
  k.delta_k = delta_k_;
  k.Delta_k = Delta(px);
  k.b1 = b1_;
  k.b2 = b2_;
  k.limit_branch = limit_;
  if (!limit_) {
    k.eta1 = eta_scale_ * k.Delta_k - eta1_shift_;
    k.eta2 = eta_scale_ * k.Delta_k - eta2_shift_;
  }
  k.damped_F = damped(px);
  k.F = ComplexScaled::from_complex(k.damped_F) * ComplexScaled::from_exp(tau_);
  return k;
}

}  // namespace nsse
