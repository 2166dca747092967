#pragma once

#include <complex>

namespace nsse::oracle {

// Reference W(z) in 113-bit precision: power series for |z| <= 6.5,
// Laplace continued fraction (iterated to convergence) beyond, reflection
// for Im z < 0.  Independent of the Weideman code in nsse::faddeeva.
struct QuadFaddeeva {
  // log|W(z)| and arg W(z); finite even where |W| exceeds double range.
  double log_abs;
  double arg;

  std::complex<double> value() const;  // may overflow to inf
};

QuadFaddeeva faddeeva_reference(std::complex<double> z);

// Relative error of `approx` against the reference, evaluated in quad
// precision.  `approx_log_scale` lets scaled values (mantissa*exp(scale))
// be compared where the plain value would overflow.
double relative_error(std::complex<double> z, std::complex<double> approx,
                      double approx_log_scale = 0.0);

}  // namespace nsse::oracle
