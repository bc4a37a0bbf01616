#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace holodual {

using cplx = std::complex<double>;

// Point in C^2. All formulas below are written for n = 2; the pairing and
// norms generalize verbatim to higher n.
struct CPoint {
  std::array<cplx, 2> c{cplx(0.0, 0.0), cplx(0.0, 0.0)};

  CPoint() = default;
  CPoint(cplx z1, cplx z2) : c{z1, z2} {}

  cplx& operator[](std::size_t i) { return c[i]; }
  const cplx& operator[](std::size_t i) const { return c[i]; }

  friend CPoint operator+(const CPoint& a, const CPoint& b) {
    return {a.c[0] + b.c[0], a.c[1] + b.c[1]};
  }
  friend CPoint operator-(const CPoint& a, const CPoint& b) {
    return {a.c[0] - b.c[0], a.c[1] - b.c[1]};
  }
  friend CPoint operator*(double t, const CPoint& p) {
    return {t * p.c[0], t * p.c[1]};
  }
  friend CPoint operator*(cplx t, const CPoint& p) {
    return {t * p.c[0], t * p.c[1]};
  }
};

// Bilinear pairing <z,w> = z1 w1 + z2 w2 (no conjugation).
inline cplx pairing(const CPoint& z, const CPoint& w) {
  return z[0] * w[0] + z[1] * w[1];
}

inline double norm_sq(const CPoint& z) {
  return std::norm(z[0]) + std::norm(z[1]);
}

inline double norm(const CPoint& z) { return std::sqrt(norm_sq(z)); }

inline CPoint conj(const CPoint& z) {
  return {std::conj(z[0]), std::conj(z[1])};
}

inline bool is_finite(const CPoint& z) {
  return std::isfinite(z[0].real()) && std::isfinite(z[0].imag()) &&
         std::isfinite(z[1].real()) && std::isfinite(z[1].imag());
}

}  // namespace holodual
