#pragma once

// Minimal binary128 complex arithmetic used by lattice accumulation and
// finite-part fitting.

#include <quadmath.h>

#include <complex>

namespace symzeta {

using quad = __float128;

struct QComplex {
  quad re = 0;
  quad im = 0;

  QComplex() = default;
  QComplex(quad r, quad i = 0) : re(r), im(i) {}
  explicit QComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  QComplex& operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QComplex& operator-=(const QComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator-(const QComplex& a) { return {-a.re, -a.im}; }
  friend QComplex operator*(const QComplex& a, const QComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend QComplex operator*(const QComplex& a, quad s) { return {a.re * s, a.im * s}; }
  friend QComplex operator/(const QComplex& a, const QComplex& b) {
    const quad den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

inline quad qabs(const QComplex& z) { return hypotq(z.re, z.im); }

// exp(w) for complex w.
inline QComplex qexp(const QComplex& w) {
  const quad m = expq(w.re);
  quad s, c;
  sincosq(w.im, &s, &c);
  return {m * c, m * s};
}

// x^{-w} for real x > 0 and complex w.
inline QComplex qpow_neg(quad x, const QComplex& w) {
  const quad l = logq(x);
  return qexp(QComplex(-w.re * l, -w.im * l));
}

}  // namespace symzeta
