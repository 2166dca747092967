#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace nsse {

// Nodes and weights for the weight function exp(-x^2) on the real line.
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussHermite(int order);
};

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int order);
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for Kronrod nodes 1, 3, 5, 7.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gk15(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return Panel{lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod over the panels delimited by
// `breakpoints` (sorted, at least two).  Bisects the panel with the
// largest error estimate until error <= max(abs_tol, rel_tol*|I|).
template <class F>
Estimate integrate_adaptive(F&& f, std::span<const double> breakpoints, double abs_tol,
                            double rel_tol, int max_intervals) {
  std::priority_queue<detail::Panel> heap;
  Estimate est;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) continue;
    heap.push(detail::gk15(f, breakpoints[i], breakpoints[i + 1]));
  }
  auto totals = [&heap](double& value, double& error) {
    // Sum in a fixed order so the result does not depend on heap layout.
    std::vector<detail::Panel> panels;
    auto copy = heap;
    while (!copy.empty()) {
      panels.push_back(copy.top());
      copy.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const detail::Panel& x, const detail::Panel& y) { return x.lo < y.lo; });
    value = 0.0;
    error = 0.0;
    for (const auto& p : panels) {
      value += p.value;
      error += p.error;
    }
  };
  double value = 0.0, error = 0.0;
  totals(value, error);
  while (!heap.empty()) {
    if (error <= std::max(abs_tol, rel_tol * std::abs(value))) {
      est.converged = true;
      break;
    }
    if (static_cast<int>(heap.size()) >= max_intervals) break;
    const detail::Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const detail::Panel left = detail::gk15(f, worst.lo, mid);
    const detail::Panel right = detail::gk15(f, mid, worst.hi);
    heap.push(left);
    heap.push(right);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
  }
  if (heap.empty()) est.converged = true;
  totals(value, error);
  est.value = value;
  est.error = error;
  est.intervals = static_cast<int>(heap.size());
  return est;
}

template <class F>
Estimate integrate_adaptive(F&& f, double lo, double hi, double abs_tol, double rel_tol,
                            int max_intervals) {
  const std::array<double, 2> bp{lo, hi};
  return integrate_adaptive(std::forward<F>(f), std::span<const double>(bp), abs_tol, rel_tol,
                            max_intervals);
}

}  // namespace nsse
