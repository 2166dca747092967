#include "nsse/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nsse/error.hpp"
#include "nsse/integrate.hpp"
#include "nsse/parallel.hpp"

namespace nsse {

Normalization parse_normalization(const std::string& name) {
  if (name == "peak") return Normalization::peak;
  if (name == "area") return Normalization::area;
  if (name == "raw") return Normalization::raw;
  throw InvalidArgument("normalize must be peak, area or raw (got '" + name + "')");
}

std::string to_string(Normalization n) {
  switch (n) {
    case Normalization::peak: return "peak";
    case Normalization::area: return "area";
    case Normalization::raw: return "raw";
  }
  return "raw";
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

std::vector<double> lorentzian_ref(const Model& model, const std::vector<double>& detunings) {
  std::vector<double> out;
  out.reserve(detunings.size());
  for (double d : detunings) {
    const double dk = model.delta_k_from_detuning(d);
    out.push_back(1.0 / (1.0 + dk * dk));
  }
  return out;
}

void normalize(std::vector<double>& values, const std::vector<double>& grid, Normalization n) {
  double scale = 1.0;
  if (n == Normalization::peak) {
    scale = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  } else if (n == Normalization::area) {
    scale = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
      scale += 0.5 * (values[i] + values[i + 1]) * (grid[i + 1] - grid[i]);
  }
  if (scale > 0.0)
    for (double& v : values) v /= scale;
}

SpectrumDataset nsse_spectrum(const Model& model, double theta, double t, const Front& front,
                              const QuadSpec& spec, Normalization normalization,
                              const std::vector<double>& detunings, unsigned threads) {
  spec.validate();
  if (detunings.empty()) throw InvalidArgument("detuning grid is empty");
  SpectrumDataset ds;
  ds.detunings = detunings;
  ds.theta = theta;
  ds.t = t;
  ds.v = front.v;
  ds.normalization = normalization;
  ds.values = parallel_map<double>(
      detunings.size(),
      [&](std::size_t i) { return q_t_omega(model, model.mode(detunings[i], theta), t, front, spec); },
      threads);
  if (normalization == Normalization::raw) {
    const double norm2 = norms(model, t, front, spec, threads).total();
    for (double& v : ds.values) v /= norm2;
  } else {
    normalize(ds.values, detunings, normalization);
  }
  ds.lorentzian_ref = lorentzian_ref(model, detunings);
  return ds;
}

SpectrumDataset sse_spectrum(const Model& model, double theta, double t,
                             const std::vector<double>& detunings, Normalization normalization) {
  if (!(t > 0.0)) throw InvalidArgument("sse_spectrum needs t > 0");
  if (detunings.empty()) throw InvalidArgument("detuning grid is empty");
  const double a = model.packet().a;
  const double h = model.hbar_over_m();
  const double decay = std::isinf(t) ? 0.0 : std::exp(-t);
  // Q = 3 a sqrt(2 pi) / (16 pi^3) int dq exp(-q^2 a^2/2) |e^{-(1 - iD)t} - 1|^2 / (1 + D^2)
  const double K = 3.0 * a * std::sqrt(2.0 * kPi) / (16.0 * std::pow(kPi, 3));
  const double cut = 9.0 / a;

  SpectrumDataset ds;
  ds.detunings = detunings;
  ds.theta = theta;
  ds.t = t;
  ds.v = std::numeric_limits<double>::infinity();
  ds.normalization = normalization;
  for (double d : detunings) {
    const ModeGeometry mode = model.mode(d, theta);
    const double dk = model.delta_k_from_detuning(d);
    auto integrand = [&](double q) {
      const double D = dk - h * q * mode.k;
      double numer = 1.0;
      if (decay > 0.0) numer = 1.0 + decay * decay - 2.0 * decay * std::cos(D * t);
      return std::exp(-0.5 * q * q * a * a) * numer / (1.0 + D * D);
    };
    const std::array<double, 7> bp{-cut, -cut / 3, -cut / 9, 0.0, cut / 9, cut / 3, cut};
    const Estimate est =
        integrate_adaptive(integrand, std::span<const double>(bp), 1e-300, 1e-10, 4000);
    ds.values.push_back(K * est.value);
  }
  normalize(ds.values, detunings, normalization);
  ds.lorentzian_ref = lorentzian_ref(model, detunings);
  return ds;
}

AngularDataset reduced_angular(const Model& model, const std::vector<double>& times,
                               const std::vector<double>& thetas, const Front& front,
                               const QuadSpec& spec, unsigned threads) {
  spec.validate();
  if (times.empty() || thetas.empty()) throw InvalidArgument("angular grids must be non-empty");
  AngularDataset ds;
  ds.times = times;
  ds.thetas = thetas;
  ds.tau_natural = model.units().tau_natural;
  const std::size_t nt = thetas.size();
  const std::vector<double> flat = parallel_map<double>(
      times.size() * nt,
      [&](std::size_t k) { return p_theta(model, thetas[k % nt], times[k / nt], front, spec); },
      threads);
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<double> row(flat.begin() + static_cast<std::ptrdiff_t>(i * nt),
                            flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * nt));
    double mean = 0.0;
    for (double v : row) mean += v;
    mean /= static_cast<double>(nt);
    if (mean > 0.0)
      for (double& v : row) v /= mean;
    ds.values.push_back(std::move(row));
  }
  return ds;
}

double dipole_factor(double theta_pk) {
  const double s = std::sin(theta_pk);
  return s * s;
}

double fwhm(const std::vector<double>& grid, const std::vector<double>& values) {
  if (grid.size() != values.size() || grid.size() < 3) throw InvalidArgument("fwhm: bad grid");
  const auto peak_it = std::max_element(values.begin(), values.end());
  const std::size_t peak = static_cast<std::size_t>(peak_it - values.begin());
  const double half = 0.5 * *peak_it;
  auto crossing = [&](std::size_t i, std::size_t j) {
    const double f = (half - values[i]) / (values[j] - values[i]);
    return grid[i] + f * (grid[j] - grid[i]);
  };
  std::size_t i = peak;
  while (i > 0 && values[i - 1] > half) --i;
  if (i == 0) return std::numeric_limits<double>::infinity();
  const double left = crossing(i - 1, i);
  std::size_t j = peak;
  while (j + 1 < values.size() && values[j + 1] > half) ++j;
  if (j + 1 == values.size()) return std::numeric_limits<double>::infinity();
  const double right = crossing(j, j + 1);
  return right - left;
}

}  // namespace nsse
