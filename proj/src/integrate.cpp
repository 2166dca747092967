#include "nsse/integrate.hpp"

#include <cmath>

#include "nsse/error.hpp"
#include "nsse/units.hpp"

namespace nsse {

// Newton iteration on the orthonormal Hermite recurrence, roots seeded by
// the usual asymptotic guesses.
GaussHermite::GaussHermite(int order) {
  if (order < 1) throw InvalidArgument("Gauss-Hermite order must be positive");
  const int n = order;
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const double pim4 = std::pow(kPi, -0.25);
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    else if (i == 1)
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * nodes[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * nodes[1];
    else
      z = 2.0 * z - nodes[static_cast<std::size_t>(i - 2)];
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    nodes[static_cast<std::size_t>(i)] = z;
    nodes[static_cast<std::size_t>(n - 1 - i)] = -z;
    weights[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
    weights[static_cast<std::size_t>(n - 1 - i)] = weights[static_cast<std::size_t>(i)];
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

GaussLegendre::GaussLegendre(int order) {
  if (order < 1) throw InvalidArgument("Gauss-Legendre order must be positive");
  const int n = order;
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[static_cast<std::size_t>(n - 1 - i)] = weights[static_cast<std::size_t>(i)];
  }
}

}  // namespace nsse
