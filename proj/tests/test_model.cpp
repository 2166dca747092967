#include <cmath>

#include "doctest.h"
#include "nsse/integrate.hpp"
#include "nsse/model.hpp"

using namespace nsse;

namespace {
Model hydrogen() { return Model(to_internal(AtomParams::hydrogen_lyman_alpha(), 121.6e-9)); }
}  // namespace

TEST_CASE("mode geometry") {
  const Model m = hydrogen();
  const ModeGeometry g = m.mode(3.0, 0.7);
  CHECK(g.omega_k == doctest::Approx(m.units().omega0 + 3.0));
  CHECK(g.k == doctest::Approx(2.0 * kPi * (1.0 + 3.0 / m.units().omega0)).epsilon(1e-15));
  CHECK(g.kx == doctest::Approx(g.k * std::sin(0.7)));
  CHECK(g.kz == doctest::Approx(g.k * std::cos(0.7)));
}

TEST_CASE("recoil-shifted detuning") {
  const Model m = hydrogen();
  const double eps = m.units().eps_recoil;
  CHECK(m.delta_k_from_detuning(0.0) == doctest::Approx(eps));
  // delta_k = 0 one recoil shift below resonance (to ~eps^2/omega0).
  CHECK(std::abs(m.delta_k_from_detuning(-eps)) < 1e-7);
  CHECK(m.delta_k(m.units().omega0 + 2.0) == doctest::Approx(m.delta_k_from_detuning(2.0)));
}

TEST_CASE("front semantics") {
  const Front f{0.5};
  CHECK(f.tau(1.0, -0.25) == doctest::Approx(0.5));
  CHECK(Front::switched_on(0.0));
  CHECK_FALSE(Front::switched_on(-1e-300));
  CHECK(Front::simultaneous().is_simultaneous());
  CHECK(Front::simultaneous().tau(2.0, 100.0) == 2.0);
}

TEST_CASE("packet spreading") {
  const WavePacket p{1.0};
  CHECK(p.position_sigma(0.01, 0.0) == doctest::Approx(0.5));
  // |a^2 - 2i h tau| / (2a)
  CHECK(p.position_sigma(0.01, 50.0) == doctest::Approx(std::sqrt(1.0 + 1.0) / 2.0));
}

TEST_CASE("kernel vanishes before and at switch-on") {
  const Model m = hydrogen();
  const ModeGeometry g = m.mode(0.5, 1.1);
  const Front f{m.units().v_recoil};
  CHECK(m.kernel(-0.5, 0.2, 1.0, g, f).damped_F == cplx(0.0, 0.0));  // tau < 0
  const KernelSlice at_zero(m, g, f, 2.0, -2.0 * f.v);
  CHECK(at_zero.tau() == doctest::Approx(0.0).scale(1.0));
  CHECK(std::abs(at_zero.damped(0.3)) < 1e-15);
}

TEST_CASE("bracket and k_z -> 0 closed form join continuously") {
  const Model m = hydrogen();
  const Front f = Front::simultaneous();
  for (double z : {-0.4, 0.0, 0.9}) {
    const ModeGeometry at = m.mode(1.5, 0.5 * kPi);
    const EmissionKernel lim = m.kernel(z, 0.3, 4.0, at, f);
    CHECK(lim.limit_branch);
    for (double d : {1e-4, 1e-6}) {
      const EmissionKernel near = m.kernel(z, 0.3, 4.0, m.mode(1.5, 0.5 * kPi - d), f);
      CHECK_FALSE(near.limit_branch);
      CAPTURE(z);
      CAPTURE(d);
      CHECK(std::abs(near.damped_F - lim.damped_F) / std::abs(lim.damped_F) < 50.0 * d);
    }
  }
}

TEST_CASE("simultaneous-decay amplitude has the textbook modulus") {
  const Model m = hydrogen();
  const ModeGeometry g = m.mode(0.8, 0.6);
  const std::array<double, 3> p{0.7, -0.2, 1.3};
  const double h = m.hbar_over_m();
  const double D = m.delta_k_from_detuning(0.8) - h * (p[0] * g.kx + p[2] * g.kz);
  for (double t : {0.3, 2.0, 15.0}) {
    const double expect =
        (1.0 + std::exp(-2.0 * t) - 2.0 * std::exp(-t) * std::cos(D * t)) / (1.0 + D * D);
    CHECK(std::norm(m.sse_amplitude_beta(p, g, t)) == doctest::Approx(expect).epsilon(1e-9));
  }
  CHECK(m.sse_amplitude_beta(p, g, -1.0) == cplx(0.0, 0.0));
}

TEST_CASE("undamped kernel equals the damped one times exp(tau)") {
  const Model m = hydrogen();
  const EmissionKernel k = m.kernel(0.2, -0.4, 3.0, m.mode(-1.0, 2.0), Front{m.units().v_recoil});
  REQUIRE(k.tau > 0.0);
  const cplx undamped = k.F.value();
  CHECK(std::abs(undamped * std::exp(-k.tau) - k.damped_F) < 1e-12 * std::abs(k.damped_F));
  CHECK(k.at_sq == cplx(1.0, -2.0 * m.hbar_over_m() * k.tau));
}
