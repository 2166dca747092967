#include "nsse/units.hpp"

#include <cmath>
#include <string>

#include "nsse/error.hpp"

namespace nsse {

AtomParams AtomParams::hydrogen_lyman_alpha() {
  return AtomParams{2.0 * kPi * 50e6, 121.6e-9, 3.25, 2.0 * kPi * 13.328e6};
}

double AtomParams::k0() const { return 2.0 * kPi / lambda0; }

double AtomParams::omega0() const { return kSpeedOfLight * k0(); }

void AtomParams::validate() const {
  auto positive = [](double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x))
      throw InvalidArgument(std::string(name) + " must be positive and finite");
  };
  positive(gamma, "gamma");
  positive(lambda0, "lambda0");
  positive(v_recoil, "v_recoil");
  positive(omega_recoil, "omega_recoil");
  const double implied = 0.5 * k0() * v_recoil;
  if (std::abs(implied - omega_recoil) > 0.01 * omega_recoil)
    throw InvalidArgument("omega_recoil and k0*v_recoil/2 differ by more than 1%");
}

UnitSystem to_internal(const AtomParams& params, double packet_width_a,
                       TauConvention convention) {
  params.validate();
  if (!(packet_width_a > 0.0) || !std::isfinite(packet_width_a))
    throw InvalidArgument("packet width must be positive and finite");

  UnitSystem u{};
  u.frequency_unit = params.gamma;
  u.length_unit = params.lambda0;
  u.velocity_unit = params.v_recoil;
  u.tau_natural = convention == TauConvention::population ? 0.5 : 1.0;
  u.time_unit = u.tau_natural / params.gamma;

  u.k0 = 2.0 * kPi;
  u.eps_recoil = params.omega_recoil / params.gamma;
  // hbar/M = 2 omega_recoil / k0^2; in lambda0 = 1 units k0 = 2 pi.
  u.hbar_over_m = 2.0 * u.eps_recoil / (u.k0 * u.k0);
  u.omega0 = params.omega0() / params.gamma;
  u.v_recoil = params.v_recoil / (params.lambda0 * params.gamma);
  u.packet_width = packet_width_a / params.lambda0;
  u.spread_rate = u.hbar_over_m / (u.packet_width * u.packet_width);
  return u;
}

}  // namespace nsse
