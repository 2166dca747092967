#include "nsse/oracle/faddeeva_oracle.hpp"

#include <quadmath.h>

#include <cmath>

namespace nsse::oracle {
namespace {

using qreal = __float128;
using qcplx = __complex128;

qcplx make(qreal re, qreal im) {
  qcplx z;
  __real__ z = re;
  __imag__ z = im;
  return z;
}

qreal qabs(qcplx z) { return cabsq(z); }

// Sum_n (iz)^n / Gamma(n/2 + 1), split into even and odd n.
qcplx series(qcplx z) {
  const qcplx iz = make(-__imag__ z, __real__ z);
  const qcplx iz2 = iz * iz;
  qcplx even = make(1, 0);
  qcplx odd = iz * (2 / sqrtq(M_PIq));
  qcplx sum = even + odd;
  const qreal r2 = __real__ z * __real__ z + __imag__ z * __imag__ z;
  for (int m = 1; m < 4000; ++m) {
    even = even * iz2 / static_cast<qreal>(m);
    odd = odd * iz2 / (static_cast<qreal>(m) + 0.5Q);
    sum += even + odd;
    if (m > r2 && qabs(even) + qabs(odd) < 1e-36Q * qabs(sum)) break;
  }
  return sum;
}

qcplx cf_eval(qcplx z, int n) {
  qcplx t = z;
  for (int k = n; k >= 1; --k) t = z - static_cast<qreal>(k) / 2 / t;
  return make(0, 1 / sqrtq(M_PIq)) / t;
}

qcplx continued_fraction(qcplx z) {
  qcplx prev = cf_eval(z, 40);
  for (int n = 80; n <= 40960; n *= 2) {
    const qcplx cur = cf_eval(z, n);
    if (qabs(cur - prev) <= 1e-32Q * qabs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

qcplx upper(qcplx z) {
  if (qabs(z) <= 6.5Q) return series(z);
  return continued_fraction(z);
}

qcplx reference(qcplx z) {
  if (__imag__ z >= 0) return upper(z);
  return 2 * cexpq(-z * z) - upper(-z);
}

}  // namespace

std::complex<double> QuadFaddeeva::value() const {
  return std::polar(std::exp(log_abs), arg);
}

QuadFaddeeva faddeeva_reference(std::complex<double> z) {
  const qcplx w = reference(make(z.real(), z.imag()));
  return {static_cast<double>(logq(qabs(w))), static_cast<double>(cargq(w))};
}

double relative_error(std::complex<double> z, std::complex<double> approx,
                      double approx_log_scale) {
  const qcplx w = reference(make(z.real(), z.imag()));
  // Compare mantissas after removing the larger of the two scales.
  const qreal ref_log = logq(qabs(w));
  const qcplx a = make(approx.real(), approx.imag()) *
                  expq(static_cast<qreal>(approx_log_scale) - ref_log);
  const qcplx r = w * expq(-ref_log);
  return static_cast<double>(qabs(a - r));
}

}  // namespace nsse::oracle
