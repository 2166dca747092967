#include <cmath>
#include <random>

#include "doctest.h"
#include "nsse/error.hpp"
#include "nsse/oracle/faddeeva_oracle.hpp"
#include "nsse/special.hpp"

using namespace nsse;

namespace {

struct Reference {
  cplx z;
  cplx w;
};

// mpmath, 40 digits: exp(-z^2) erfc(-iz).
const Reference kFrozen[] = {
    {{0.0, 0.0}, {1.0, 0.0}},
    {{1.0, 0.0}, {0.3678794411714423216, 0.60715770584139372912}},
    {{0.0, 1.0}, {0.42758357615580700441, 0.0}},
    {{3.5, 0.2}, {0.010632925912288658272, 0.16810240806669906748}},
    {{-2.25, 1.5}, {0.12930802941258172351, -0.16786555057433843651}},
    {{6.0, 0.01}, {0.00016375289889683184285, 0.095395923386601482412}},
    {{0.5, -0.5}, {1.2220084158685705185, 1.1893393085928644093}},
    {{-4.0, -3.0}, {-0.069017359275733461344, -0.087688439086944436614}},
    {{12.5, 7.5}, {0.020003792559908438688, 0.033182441350449405024}},
    {{40.0, -1.0}, {-0.00035272864824678380502, 0.0141003249605785201}},
    {{7.9, 3.0}, {0.024126055003358791413, 0.062629630442660440074}},
    {{8.1, 0.5}, {0.0043841607495764429204, 0.069919317857689596863}},
    {{-20.0, 30.0}, {0.013020908424138849361, -0.0086739347484466744564}},
    {{0.001, -6.0}, {8621833662499404.7101, 103466970412250.88168}},
    {{-30.0, -10.0}, {-0.0056492436973660319407, -0.016930764683727462153}},
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("faddeeva matches frozen high-precision values") {
  for (const auto& r : kFrozen) {
    CAPTURE(r.z);
    CHECK(rel(faddeeva(r.z), r.w) < 1e-13);
  }
}

TEST_CASE("quad-precision oracle matches frozen values") {
  for (const auto& r : kFrozen) {
    CAPTURE(r.z);
    CHECK(oracle::relative_error(r.z, r.w) < 1e-15);
  }
}

TEST_CASE("faddeeva on the axes") {
  for (double x : {-7.0, -1.3, 0.0, 0.4, 2.0, 5.5, 9.0, 25.0}) {
    CAPTURE(x);
    CHECK(faddeeva(cplx(x, 0.0)).real() == doctest::Approx(std::exp(-x * x)).epsilon(1e-13));
  }
  // w(iy) = exp(y^2) erfc(y) is real.
  for (double y : {0.1, 0.7, 2.0, 5.0}) {
    CAPTURE(y);
    const cplx w = faddeeva(cplx(0.0, y));
    CHECK(w.real() == doctest::Approx(std::exp(y * y) * std::erfc(y)).epsilon(1e-12));
    CHECK(std::abs(w.imag()) < 1e-15);
  }
}

TEST_CASE("faddeeva symmetry w(-conj z) = conj w(z)") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-12.0, 12.0);
  for (int i = 0; i < 200; ++i) {
    const cplx z(u(rng), std::abs(u(rng)));
    CHECK(rel(faddeeva(-std::conj(z)), std::conj(faddeeva(z))) < 1e-14);
  }
}

TEST_CASE("faddeeva is accurate on both sides of the algorithm switch at |z| = 8") {
  for (double phi : {0.0, 0.05, 0.5, 1.0, 1.5, 2.5, 3.0, 3.14159}) {
    for (double r : {8.0 - 1e-12, 8.0, 8.0 + 1e-12}) {
      const cplx z = std::polar(r, phi);
      CAPTURE(z);
      CHECK(oracle::relative_error(z, faddeeva(z)) < 1e-13);
    }
  }
}

TEST_CASE("faddeeva errors") {
  CHECK_THROWS_AS(faddeeva(cplx(std::nan(""), 0.0)), InvalidArgument);
  CHECK_THROWS_AS(faddeeva(cplx(0.0, INFINITY)), InvalidArgument);
  CHECK_THROWS_AS(faddeeva(cplx(0.0, -30.0)), OverflowError);
}

TEST_CASE("scaled_exp_w stays finite where the plain value overflows") {
  const cplx z(1.0, -30.0);
  const ComplexScaled s = scaled_exp_w(cplx(-850.0, 0.3), z);
  // exp(-850) * W(z) with |W| ~ 2 exp(899) is ~ exp(49.7).
  const double log_abs = -850.0 + oracle::faddeeva_reference(z).log_abs;
  CHECK(s.log_abs() == doctest::Approx(log_abs).epsilon(1e-13));
  CHECK(std::isfinite(std::abs(s.value())));
  CHECK(oracle::relative_error(z, s.mantissa * std::polar(1.0, -0.3), s.log_scale + 850.0) < 1e-12);
}

TEST_CASE("ComplexScaled arithmetic") {
  const ComplexScaled x = ComplexScaled::from_complex(cplx(3.0, -4.0));
  const ComplexScaled y = ComplexScaled::from_exp(cplx(800.0, 1.0));
  const ComplexScaled p = x * y;
  CHECK(p.log_abs() == doctest::Approx(800.0 + std::log(5.0)));
  const ComplexScaled diff = y - y;
  CHECK(diff.is_zero());
  const ComplexScaled sum = x + ComplexScaled::from_complex(cplx(1.0, 4.0));
  CHECK(std::abs(sum.value() - cplx(4.0, 0.0)) < 1e-14);
  CHECK(ComplexScaled{}.log_abs() == -INFINITY);
}

TEST_CASE("fault injection perturbs every evaluation") {
  const cplx z(1.0, 0.5);
  const cplx exact = faddeeva(z);
  set_faddeeva_fault(0.01);
  const cplx faulty = faddeeva(z);
  set_faddeeva_fault(0.0);
  CHECK(rel(faulty, exact) == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(faddeeva(z) == exact);
}
