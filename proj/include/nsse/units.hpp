#pragma once

namespace nsse {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Transition parameters in SI units.
struct AtomParams {
  double gamma;         // amplitude decay rate [rad/s]
  double lambda0;       // transition wavelength [m]
  double v_recoil;      // hbar k0 / M [m/s]
  double omega_recoil;  // hbar k0^2 / (2M) [rad/s]

  // Hydrogen 2p -> 1s (Lyman alpha).
  static AtomParams hydrogen_lyman_alpha();

  // Throws InvalidArgument unless all fields are positive and
  // omega_recoil agrees with k0 v_recoil / 2 to 1%.
  void validate() const;

  double k0() const;      // 2 pi / lambda0 [1/m]
  double omega0() const;  // c k0 [rad/s]
};

// Which lifetime the user-facing time axis is measured in.
enum class TauConvention {
  population,  // tau_natural = 1/(2 gamma)
  amplitude,   // tau_natural = 1/gamma
};

// Dimensionless system used by every computation: hbar = 1, frequencies
// in gamma, times in 1/gamma, lengths in lambda0, momenta as wavenumbers
// in 1/lambda0.  User-facing quantities (tau_natural, v_recoil) are
// converted at the boundary with the helpers below.
struct UnitSystem {
  double time_unit;       // tau_natural [s]
  double length_unit;     // lambda0 [m]
  double velocity_unit;   // v_recoil [m/s]
  double frequency_unit;  // gamma [rad/s]

  double eps_recoil;   // omega_recoil / gamma
  double spread_rate;  // hbar / (M a^2) / gamma for the packet width a

  double hbar_over_m;     // hbar/M in lambda0^2 gamma
  double k0;              // 2 pi in 1/lambda0
  double omega0;          // omega0 / gamma
  double v_recoil;        // v_recoil in lambda0 gamma
  double tau_natural;     // tau_natural in 1/gamma
  double packet_width;    // a in lambda0

  double recoil_velocity() const { return hbar_over_m * k0; }

  double time_from_tau_natural(double t) const { return t * tau_natural; }
  double time_to_tau_natural(double t) const { return t / tau_natural; }
  double velocity_from_v_recoil(double v) const { return v * v_recoil; }
  double velocity_to_v_recoil(double v) const { return v / v_recoil; }

  double seconds(double t) const { return t / frequency_unit; }
  double from_seconds(double s) const { return s * frequency_unit; }
  double meters(double x) const { return x * length_unit; }
  double from_meters(double m) const { return m / length_unit; }
};

UnitSystem to_internal(const AtomParams& params, double packet_width_a,
                       TauConvention convention = TauConvention::population);

}  // namespace nsse
