#include <cmath>

#include "doctest.h"
#include "nsse/integrate.hpp"
#include "nsse/parallel.hpp"
#include "nsse/units.hpp"

using namespace nsse;

TEST_CASE("Gauss-Hermite integrates x^(2m) exp(-x^2) exactly") {
  for (int order : {8, 16, 40}) {
    const GaussHermite gh(order);
    REQUIRE(gh.nodes.size() == static_cast<std::size_t>(order));
    for (int m = 0; m < order; ++m) {
      double acc = 0.0;
      for (std::size_t i = 0; i < gh.nodes.size(); ++i)
        acc += gh.weights[i] * std::pow(gh.nodes[i], 2 * m);
      const double exact = std::tgamma(m + 0.5);
      CAPTURE(order);
      CAPTURE(m);
      CHECK(acc == doctest::Approx(exact).epsilon(1e-11));
    }
  }
}

TEST_CASE("Gauss-Hermite nodes are symmetric and odd moments vanish") {
  const GaussHermite gh(40);
  double odd = 0.0;
  for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
    CHECK(gh.nodes[i] == doctest::Approx(-gh.nodes[gh.nodes.size() - 1 - i]).epsilon(1e-13));
    odd += gh.weights[i] * std::pow(gh.nodes[i], 5);
  }
  CHECK(std::abs(odd) < 1e-12);
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  const GaussLegendre gl(24);
  for (int m = 0; m < 48; ++m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) acc += gl.weights[i] * std::pow(gl.nodes[i], m);
    const double exact = m % 2 == 1 ? 0.0 : 2.0 / (m + 1);
    CAPTURE(m);
    CHECK(acc == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("adaptive Gauss-Kronrod on known integrals") {
  const Estimate a = integrate_adaptive([](double x) { return std::exp(-x * x); }, -10.0, 10.0,
                                        0.0, 1e-13, 200);
  CHECK(a.converged);
  CHECK(a.value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));

  // Integrable endpoint singularity needs many bisections.
  const Estimate b = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                                        0.0, 1e-9, 500);
  CHECK(b.converged);
  CHECK(b.value == doctest::Approx(2.0).epsilon(1e-8));

  const std::array<double, 4> bp{0.0, 1.0, 2.0, 3.0};
  const Estimate c = integrate_adaptive([](double x) { return std::abs(x - 1.0); },
                                        std::span<const double>(bp), 0.0, 1e-14, 50);
  CHECK(c.value == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("adaptive integration reports non-convergence") {
  const Estimate e = integrate_adaptive([](double x) { return std::sin(1.0 / x) / x; }, 1e-8, 1.0,
                                        0.0, 1e-12, 20);
  CHECK_FALSE(e.converged);
  CHECK(e.intervals <= 20);
}

TEST_CASE("parallel_map is deterministic and propagates exceptions") {
  auto f = [](std::size_t i) { return std::sin(0.1 * static_cast<double>(i)); };
  const auto one = parallel_map<double>(1000, f, 1);
  const auto many = parallel_map<double>(1000, f, 7);
  CHECK(one == many);
  CHECK_THROWS_AS(parallel_map<double>(
                      10,
                      [](std::size_t i) -> double {
                        if (i == 3) throw std::runtime_error("boom");
                        return 0.0;
                      },
                      4),
                  std::runtime_error);
}
