#include "nsse/special.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <limits>

#include "nsse/error.hpp"
#include "nsse/units.hpp"

namespace nsse {
namespace {

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kLn2 = 0.69314718055994530942;
// exp() of anything above this is not a finite double.
constexpr double kMaxExpArg = 709.0;

// Weideman's rational approximation: w(z) = 2 p(Z)/(L - iz)^2 + 1/(sqrt(pi)(L - iz))
// with Z = (L + iz)/(L - iz) and p a degree N-1 polynomial whose
// coefficients are Fourier coefficients of exp(-t^2)(L^2 + t^2) on the
// mapped circle.  N = 40 is accurate to ~1e-15 relative for |z| < 8.
constexpr int kWeidemanN = 40;

struct Weideman {
  double L;
  std::array<double, kWeidemanN> c;  // c[n-1] multiplies Z^(n-1)

  Weideman() {
    const int M = 2 * kWeidemanN;
    const int M2 = 2 * M;
    L = std::sqrt(kWeidemanN / std::sqrt(2.0));
    // f has length M2: f[0] = 0, f[1 + i] = g(theta_k) for k = -M+1 .. M-1.
    std::array<double, 2 * 2 * kWeidemanN> f{};
    for (int k = -M + 1; k < M; ++k) {
      const double theta = k * kPi / M;
      const double t = L * std::tan(0.5 * theta);
      f[static_cast<std::size_t>(k + M)] = std::exp(-t * t) * (L * L + t * t);
    }
    // Real part of the DFT of fftshift(f), divided by M2.
    for (int n = 1; n <= kWeidemanN; ++n) {
      double acc = 0.0;
      for (int j = 0; j < M2; ++j) {
        const double g = f[static_cast<std::size_t>((j + M) % M2)];
        acc += g * std::cos(2.0 * kPi * static_cast<double>(j) * n / M2);
      }
      c[static_cast<std::size_t>(n - 1)] = acc / M2;
    }
  }
};

const Weideman& weideman() {
  static const Weideman table;
  return table;
}

cplx weideman_w(cplx z) {
  const Weideman& wd = weideman();
  const cplx iz(-z.imag(), z.real());
  const cplx denom = wd.L - iz;
  const cplx Z = (wd.L + iz) / denom;
  cplx p = wd.c[kWeidemanN - 1];
  for (int n = kWeidemanN - 2; n >= 0; --n) p = p * Z + wd.c[static_cast<std::size_t>(n)];
  return 2.0 * p / (denom * denom) + kInvSqrtPi / denom;
}

// Laplace continued fraction, converged to machine precision for |z| >= 8.
cplx continued_fraction_w(cplx z) {
  cplx t = z;
  for (int k = 15; k >= 1; --k) t = z - (0.5 * k) / t;
  return cplx(0.0, kInvSqrtPi) / t;
}

std::atomic<double> g_fault{0.0};

// exp(-z^2 + shift) with -z^2 carried as double-double: for |z| ~ 50 the
// phase 2xy is ~5e3 and plain rounding would cost ~1e-12 relative.
ComplexScaled exp_neg_square(cplx z, double shift) {
  const double x = z.real(), y = z.imag();
  const double x2 = x * x, ex = std::fma(x, x, -x2);
  const double y2 = y * y, ey = std::fma(y, y, -y2);
  const double re = y2 - x2;
  const double bb = re - y2;
  const double re_lo = ((y2 - (re - bb)) + (-x2 - bb)) + ey - ex;
  const double p = x * y, ep = std::fma(x, y, -p);
  ComplexScaled r = ComplexScaled::from_exp(cplx(re + shift, -2.0 * p));
  r.mantissa *= cplx(1.0 + re_lo, -2.0 * ep);
  return r.normalize();
}

}  // namespace

void set_faddeeva_fault(double relative_error) { g_fault.store(relative_error); }

cplx faddeeva_upper(cplx z) {
  const cplx w = std::norm(z) < 64.0 ? weideman_w(z) : continued_fraction_w(z);
  const double fault = g_fault.load(std::memory_order_relaxed);
  return fault == 0.0 ? w : w * (1.0 + fault);
}

cplx faddeeva(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw InvalidArgument("faddeeva: non-finite argument");
  if (z.imag() >= 0.0) return faddeeva_upper(z);
  // w(z) = 2 exp(-z^2) - w(-z)
  const ComplexScaled e = exp_neg_square(z, kLn2);
  if (e.log_abs() > kMaxExpArg)
    throw OverflowError("faddeeva: exp(-z^2) overflows; use scaled_exp_w");
  return e.value() - faddeeva_upper(-z);
}

ComplexScaled ComplexScaled::from_exp(cplx exponent) {
  ComplexScaled r;
  r.mantissa = std::polar(1.0, exponent.imag());
  r.log_scale = exponent.real();
  return r;
}

ComplexScaled ComplexScaled::from_complex(cplx value) {
  ComplexScaled r;
  r.mantissa = value;
  return r.normalize();
}

ComplexScaled& ComplexScaled::normalize() {
  const double m = std::abs(mantissa);
  if (m == 0.0) {
    mantissa = 0.0;
    log_scale = 0.0;
  } else if (m < 1e-2 || m > 1e2) {
    mantissa /= m;
    log_scale += std::log(m);
  }
  return *this;
}

double ComplexScaled::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return log_scale + std::log(std::abs(mantissa));
}

cplx ComplexScaled::value() const {
  if (is_zero()) return 0.0;
  return mantissa * std::exp(log_scale);
}

ComplexScaled operator*(const ComplexScaled& x, const ComplexScaled& y) {
  ComplexScaled r;
  r.mantissa = x.mantissa * y.mantissa;
  r.log_scale = x.log_scale + y.log_scale;
  return r.normalize();
}

ComplexScaled operator*(const ComplexScaled& x, cplx y) {
  ComplexScaled r = x;
  r.mantissa *= y;
  return r.normalize();
}

ComplexScaled operator+(const ComplexScaled& x, const ComplexScaled& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const double top = std::max(x.log_scale, y.log_scale);
  ComplexScaled r;
  r.mantissa = x.mantissa * std::exp(x.log_scale - top) + y.mantissa * std::exp(y.log_scale - top);
  r.log_scale = top;
  return r.normalize();
}

ComplexScaled operator-(const ComplexScaled& x, const ComplexScaled& y) {
  ComplexScaled neg = y;
  neg.mantissa = -neg.mantissa;
  return x + neg;
}

ComplexScaled scaled_exp_w(cplx s, cplx eta) {
  if (eta.imag() >= 0.0) {
    ComplexScaled r = ComplexScaled::from_exp(s);
    r.mantissa *= faddeeva_upper(eta);
    return r.normalize();
  }
  // exp(s) W(eta) = 2 exp(s - eta^2) - exp(s) W(-eta)
  ComplexScaled reflected = exp_neg_square(eta, kLn2) * ComplexScaled::from_exp(s);
  ComplexScaled direct = ComplexScaled::from_exp(s);
  direct.mantissa *= faddeeva_upper(-eta);
  return reflected - direct.normalize();
}

}  // namespace nsse
