#pragma once

#include <string>
#include <vector>

#include "nsse/quad.hpp"

namespace nsse {

enum class Normalization { peak, area, raw };

Normalization parse_normalization(const std::string& name);
std::string to_string(Normalization n);

// Q_t over a detuning grid (gamma units) for one (theta, t, v).
struct SpectrumDataset {
  std::vector<double> detunings;
  std::vector<double> values;
  std::vector<double> lorentzian_ref;  // natural line, peak 1, same grid
  double theta = 0.0;
  double t = 0.0;  // 1/gamma
  double v = 0.0;  // lambda0 gamma; inf for SSE
  Normalization normalization = Normalization::peak;
};

// Reduced P_t(theta) on a (t, theta) grid; values[i][j] is t_i, theta_j.
struct AngularDataset {
  std::vector<double> thetas;
  std::vector<double> times;  // 1/gamma
  std::vector<std::vector<double>> values;
  double tau_natural = 1.0;  // 1/gamma per tau_natural, for output
  bool mean_normalized = true;
};

std::vector<double> linspace(double lo, double hi, std::size_t n);

// Peak-1 natural Lorentzian 1/(1 + delta_k^2) at each detuning.
std::vector<double> lorentzian_ref(const Model& model, const std::vector<double>& detunings);

// Scales `values` in place per the flag; peak: max = 1, area: trapezoid = 1.
void normalize(std::vector<double>& values, const std::vector<double>& grid, Normalization n);

// Raw mode divides by the squared state norm, which costs a full
// angular integration; peak and area do not need it.
SpectrumDataset nsse_spectrum(const Model& model, double theta, double t, const Front& front,
                              const QuadSpec& spec, Normalization normalization,
                              const std::vector<double>& detunings, unsigned threads = 1);

// Spectrum of the simultaneous model at time t (t = inf: long-time limit),
// Doppler-averaged over the momentum component along k.  Raw values are
// absolute densities per unit omega and solid angle (no dipole factor).
SpectrumDataset sse_spectrum(const Model& model, double theta, double t,
                             const std::vector<double>& detunings,
                             Normalization normalization = Normalization::peak);

AngularDataset reduced_angular(const Model& model, const std::vector<double>& times,
                               const std::vector<double>& thetas, const Front& front,
                               const QuadSpec& spec, unsigned threads = 1);

// 1 - cos^2 = sin^2 of the angle between dipole and photon direction.
double dipole_factor(double theta_pk);

// Full width at half maximum by linear interpolation on the grid.
double fwhm(const std::vector<double>& grid, const std::vector<double>& values);

}  // namespace nsse
