#pragma once

#include <complex>

namespace nsse {

using cplx = std::complex<double>;

// A complex number stored as mantissa * exp(log_scale) so that products
// like exp(b^2/a_t^2) W(eta) stay representable when each factor is not.
struct ComplexScaled {
  cplx mantissa{0.0, 0.0};
  double log_scale = 0.0;

  static ComplexScaled from_exp(cplx exponent);  // exp(exponent)
  static ComplexScaled from_complex(cplx value);

  // Brings |mantissa| into [1e-2, 1e2]; zero is kept as (0, 0).
  ComplexScaled& normalize();

  bool is_zero() const { return mantissa == cplx(0.0, 0.0); }
  double log_abs() const;  // -inf for zero
  // Plain value; overflows to inf / underflows to 0 like std::exp.
  cplx value() const;

  friend ComplexScaled operator*(const ComplexScaled& x, const ComplexScaled& y);
  friend ComplexScaled operator*(const ComplexScaled& x, cplx y);
  friend ComplexScaled operator+(const ComplexScaled& x, const ComplexScaled& y);
  friend ComplexScaled operator-(const ComplexScaled& x, const ComplexScaled& y);
};

// W(z) = exp(-z^2) erfc(-iz) on the whole complex plane.  In the lower
// half-plane exp(-z^2) can exceed double range; OverflowError is thrown
// there (use scaled_exp_w for such arguments).
cplx faddeeva(cplx z);

// W(z) for Im z >= 0 only; no checks.  Hot path of the kernel.
cplx faddeeva_upper(cplx z);

// Multiplies every W evaluation by (1 + relative_error).  Sensitivity
// testing of the validation suites only; 0 restores exact behaviour.
void set_faddeeva_fault(double relative_error);

// exp(s) * W(eta) without intermediate overflow.
ComplexScaled scaled_exp_w(cplx s, cplx eta);

}  // namespace nsse
