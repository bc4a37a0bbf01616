#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "holodual/numerics.hpp"
#include "holodual/point.hpp"

namespace holodual {

// Points closer to the origin than this route to the T_D(0)=0 branch; the
// gradient is reported as undefined inside the same radius.
inline constexpr double kOriginRadius = 1e-12;

enum class DomainKind { ball, ellipsoid, diamond, polydisc };

// Model domain in C^2: unit ball, Reinhardt ellipsoid with semi-axes
// (a1,a2), the l^1 ball ("diamond"), or the unit polydisc.
struct DomainSpec {
  DomainKind kind = DomainKind::ball;
  double a1 = 1.0;
  double a2 = 1.0;

  static DomainSpec ball() { return {DomainKind::ball, 1.0, 1.0}; }
  static DomainSpec ellipsoid(double a1, double a2) {
    if (!(a1 > 0.0) || !(a2 > 0.0))
      throw std::invalid_argument("DomainSpec: semi-axes must be positive");
    if (a1 == 1.0 && a2 == 1.0) return ball();
    return {DomainKind::ellipsoid, a1, a2};
  }
  static DomainSpec diamond() { return {DomainKind::diamond, 1.0, 1.0}; }
  static DomainSpec polydisc() { return {DomainKind::polydisc, 1.0, 1.0}; }

  // Variants on which m_D is smooth away from 0 and strongly convex; the
  // diamond and polydisc are exactly the excluded cases.
  bool smooth() const {
    return kind == DomainKind::ball || kind == DomainKind::ellipsoid;
  }

  friend bool operator==(const DomainSpec& x, const DomainSpec& y) {
    return x.kind == y.kind && x.a1 == y.a1 && x.a2 == y.a2;
  }
};

inline std::string domain_name(const DomainSpec& d) {
  switch (d.kind) {
    case DomainKind::ball: return "ball";
    case DomainKind::ellipsoid: return "ellipsoid";
    case DomainKind::diamond: return "diamond";
    case DomainKind::polydisc: return "polydisc";
  }
  return "?";
}

namespace detail {
inline void require_smooth(const DomainSpec& d, const char* op) {
  if (!d.smooth())
    throw std::invalid_argument(std::string(op) +
                                ": domain is not C^2-smooth (diamond/polydisc)");
}
}  // namespace detail

// Minkowski functional m_D; positively 1-homogeneous, < 1 exactly on D.
inline double minkowski(const DomainSpec& d, const CPoint& p) {
  switch (d.kind) {
    case DomainKind::ball:
      return norm(p);
    case DomainKind::ellipsoid:
      return std::sqrt(std::norm(p[0]) / (d.a1 * d.a1) +
                       std::norm(p[1]) / (d.a2 * d.a2));
    case DomainKind::diamond:
      return std::abs(p[0]) + std::abs(p[1]);
    case DomainKind::polydisc:
      return std::max(std::abs(p[0]), std::abs(p[1]));
  }
  return 0.0;
}

// Support function H_D(z) = sup_{zeta in D} Re<zeta,z>.
inline double support(const DomainSpec& d, const CPoint& z) {
  switch (d.kind) {
    case DomainKind::ball:
      return norm(z);
    case DomainKind::ellipsoid:
      return std::sqrt(d.a1 * d.a1 * std::norm(z[0]) +
                       d.a2 * d.a2 * std::norm(z[1]));
    case DomainKind::diamond:
      return std::max(std::abs(z[0]), std::abs(z[1]));
    case DomainKind::polydisc:
      return std::abs(z[0]) + std::abs(z[1]);
  }
  return 0.0;
}

// Defining function rho_D = m_D^2 - 1.
inline double rho(const DomainSpec& d, const CPoint& p) {
  const double m = minkowski(d, p);
  return m * m - 1.0;
}

// Interior of the dual complement {H_D < 1}, again a model domain.
inline DomainSpec dual_domain(const DomainSpec& d) {
  switch (d.kind) {
    case DomainKind::ball: return DomainSpec::ball();
    case DomainKind::ellipsoid:
      return DomainSpec::ellipsoid(1.0 / d.a1, 1.0 / d.a2);
    case DomainKind::diamond: return DomainSpec::polydisc();
    case DomainKind::polydisc: return DomainSpec::diamond();
  }
  return d;
}

// Holomorphic gradient of m_D, component j = d m / d zeta_j. Closed form for
// the smooth variants: conj(zeta_j) / (2 m a_j^2). Satisfies the Euler
// identity Re<2 grad, zeta> = m(zeta).
inline CPoint grad_minkowski(const DomainSpec& d, const CPoint& p) {
  detail::require_smooth(d, "grad_minkowski");
  if (norm(p) <= kOriginRadius)
    throw std::domain_error("grad_minkowski: gradient undefined at 0");
  const double m = minkowski(d, p);
  return {std::conj(p[0]) / (2.0 * m * d.a1 * d.a1),
          std::conj(p[1]) / (2.0 * m * d.a2 * d.a2)};
}

// Holomorphic gradient of rho_D = m^2 - 1, i.e. 2 m grad m; smooth through
// the origin for the ellipsoid family.
inline CPoint grad_rho(const DomainSpec& d, const CPoint& p) {
  detail::require_smooth(d, "grad_rho");
  return {std::conj(p[0]) / (d.a1 * d.a1), std::conj(p[1]) / (d.a2 * d.a2)};
}

namespace detail {
// The defining formula of T_D, with the zero branch but without the domain
// membership check; finite-difference stencils probe it just past bD.
inline CPoint tmap_formula(const DomainSpec& d, const CPoint& p) {
  if (norm(p) <= kOriginRadius) return CPoint{};
  const double m = minkowski(d, p);
  const CPoint g = grad_minkowski(d, p);
  const cplx denom = pairing(g, p);
  return (m * m / denom) * g;
}
}  // namespace detail

// T_D : D -> D*,  T_D(zeta) = m^2(zeta) grad m / <grad m, zeta>, T_D(0) = 0.
// Accepts the closed domain (the boundary restriction is the map S_D).
inline CPoint tmap(const DomainSpec& d, const CPoint& p) {
  detail::require_smooth(d, "tmap");
  if (minkowski(d, p) > 1.0 + 1e-12)
    throw std::domain_error("tmap: point not in domain");
  return detail::tmap_formula(d, p);
}

namespace detail {

inline CPoint nudge(const CPoint& p, int axis, double h) {
  CPoint q = p;
  const int j = axis / 2;
  if (axis % 2 == 0)
    q[static_cast<std::size_t>(j)] += cplx(h, 0.0);
  else
    q[static_cast<std::size_t>(j)] += cplx(0.0, h);
  return q;
}

inline double det4(const std::array<std::array<double, 4>, 4>& a) {
  // Cofactor expansion via 3x3 minors.
  auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
    return a[r0][c0] * (a[r1][c1] * a[r2][c2] - a[r1][c2] * a[r2][c1]) -
           a[r0][c1] * (a[r1][c0] * a[r2][c2] - a[r1][c2] * a[r2][c0]) +
           a[r0][c2] * (a[r1][c0] * a[r2][c1] - a[r1][c1] * a[r2][c0]);
  };
  return a[0][0] * det3(1, 2, 3, 1, 2, 3) - a[0][1] * det3(1, 2, 3, 0, 2, 3) +
         a[0][2] * det3(1, 2, 3, 0, 1, 3) - a[0][3] * det3(1, 2, 3, 0, 1, 2);
}

}  // namespace detail

// |det| of the real 4x4 Jacobian of T_D at p, central differences with step
// h. This is the numeric realization of the change-of-variables density h_D.
inline double tmap_jacobian(const DomainSpec& d, const CPoint& p, double h) {
  detail::require_smooth(d, "tmap_jacobian");
  if (!(h >= 1e-8 && h <= 1e-4))
    throw std::invalid_argument("tmap_jacobian: step must lie in [1e-8,1e-4]");
  const double m = minkowski(d, p);
  if (!(m > 0.0 && m < 1.0))
    throw std::domain_error("tmap_jacobian: need 0 < m_D(p) < 1");
  if (norm(p) <= 4.0 * h)
    throw std::domain_error("tmap_jacobian: step too large for point");
  std::array<std::array<double, 4>, 4> jac{};
  for (int axis = 0; axis < 4; ++axis) {
    const CPoint tp = detail::tmap_formula(d, detail::nudge(p, axis, h));
    const CPoint tm = detail::tmap_formula(d, detail::nudge(p, axis, -h));
    const CPoint dcol = (1.0 / (2.0 * h)) * (tp - tm);
    jac[0][axis] = dcol[0].real();
    jac[1][axis] = dcol[0].imag();
    jac[2][axis] = dcol[1].real();
    jac[3][axis] = dcol[1].imag();
  }
  return std::abs(detail::det4(jac));
}

// Minimum eigenvalue of the real 4x4 Hessian of rho_D at p (central
// differences, step 1e-5, symmetrized). Positive on the smooth variants.
inline double hessian_min_eig(const DomainSpec& d, const CPoint& p) {
  detail::require_smooth(d, "hessian_min_eig");
  if (norm(p) <= kOriginRadius)
    throw std::domain_error("hessian_min_eig: undefined at 0");
  const double h = 1e-5;
  const double f0 = rho(d, p);
  std::vector<std::vector<double>> hess(4, std::vector<double>(4, 0.0));
  for (int i = 0; i < 4; ++i) {
    hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
        (rho(d, detail::nudge(p, i, h)) - 2.0 * f0 +
         rho(d, detail::nudge(p, i, -h))) /
        (h * h);
    for (int j = i + 1; j < 4; ++j) {
      const double v =
          (rho(d, detail::nudge(detail::nudge(p, i, h), j, h)) -
           rho(d, detail::nudge(detail::nudge(p, i, h), j, -h)) -
           rho(d, detail::nudge(detail::nudge(p, i, -h), j, h)) +
           rho(d, detail::nudge(detail::nudge(p, i, -h), j, -h))) /
          (4.0 * h * h);
      hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      hess[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    }
  }
  return symmetric_min_eigenvalue(hess);
}

}  // namespace holodual
