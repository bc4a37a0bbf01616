#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "holodual/domain.hpp"
#include "holodual/point.hpp"
#include "holodual/prng.hpp"

namespace holodual {

// Masking radii for the sampling sweeps; the kernels' genuine singular set
// (origin for K-tilde/density, boundary diagonal for all of them) has to be
// excluded for finite sampling. Reported with every sweep.
inline constexpr double kSweepOriginMask = 1e-3;
inline constexpr double kSweepDiagonalDistMask = 1e-6;
inline constexpr double kSweepDiagonalRhoMask = 1e-6;

// B_D(zeta,z) = m(zeta) <2 grad m(zeta), zeta - z> + (1 - m^2(zeta)).
// The m-prefactor kills the first term at the origin, so B(0,z) = 1.
inline cplx kernel_b(const DomainSpec& d, const CPoint& zeta, const CPoint& z) {
  detail::require_smooth(d, "kernel_b");
  const double m = minkowski(d, zeta);
  if (norm(zeta) <= kOriginRadius) return {1.0, 0.0};
  const CPoint g = grad_minkowski(d, zeta);
  return m * pairing(2.0 * g, zeta - z) + (1.0 - m * m);
}

// K_D(zeta,z) = 1 - <T_D(zeta), z>; equals 1 at zeta = 0.
inline cplx kernel_k(const DomainSpec& d, const CPoint& zeta, const CPoint& z) {
  detail::require_smooth(d, "kernel_k");
  return cplx(1.0, 0.0) - pairing(tmap(d, zeta), z);
}

// K-tilde = K * <grad rho(zeta), zeta> / (1 + rho(zeta)), zeta != 0.
inline cplx kernel_k_tilde(const DomainSpec& d, const CPoint& zeta,
                           const CPoint& z) {
  detail::require_smooth(d, "kernel_k_tilde");
  if (norm(zeta) <= kOriginRadius)
    throw std::domain_error("kernel_k_tilde: K-tilde undefined at origin");
  const CPoint dr = grad_rho(d, zeta);
  return kernel_k(d, zeta, z) * pairing(dr, zeta) / (1.0 + rho(d, zeta));
}

// Right-hand side of the two-sided kernel estimate:
// |rho(zeta)| + |rho(z)| + |Im <grad rho(zeta), zeta - z>| + |zeta - z|^2.
inline double estimate_rhs(const DomainSpec& d, const CPoint& zeta,
                           const CPoint& z) {
  detail::require_smooth(d, "estimate_rhs");
  const CPoint dr = grad_rho(d, zeta);
  return std::abs(rho(d, zeta)) + std::abs(rho(d, z)) +
         std::abs(pairing(dr, zeta - z).imag()) + norm_sq(zeta - z);
}

// Density of the reproducing (n,n)-form: the 3x3 determinant with corner
// rho <grad rho, zeta> / (1+rho), first row grad rho, first column the
// conjugate derivatives of the corner, and the complex Hessian block of rho.
// All entries are closed-form for the ellipsoid family. The constant c
// defaults to 1 (raw determinant); the calibrated value comes from the ball
// reproducing identity (see verify).
inline cplx density_h(const DomainSpec& d, const CPoint& zeta, cplx c = 1.0) {
  detail::require_smooth(d, "density_h");
  if (norm(zeta) <= kOriginRadius)
    throw std::domain_error("density_h: undefined at origin");
  const double r = rho(d, zeta);
  const CPoint dr = grad_rho(d, zeta);               // row: d rho / d zeta_j
  const cplx u = pairing(dr, zeta);                  // <grad rho, zeta>
  const cplx v = 1.0 + r;
  const cplx corner = r * u / v;
  // Conjugate derivatives: dbar_j rho = zeta_j / a_j^2 = dbar_j u = dbar_j v.
  const cplx db1 = zeta[0] / (d.a1 * d.a1);
  const cplx db2 = zeta[1] / (d.a2 * d.a2);
  const cplx col1 = (db1 * u * v + r * db1 * v - r * u * db1) / (v * v);
  const cplx col2 = (db2 * u * v + r * db2 * v - r * u * db2) / (v * v);
  // Complex Hessian of rho: diag(1/a1^2, 1/a2^2).
  const double h11 = 1.0 / (d.a1 * d.a1);
  const double h22 = 1.0 / (d.a2 * d.a2);
  const cplx det =
      corner * (h11 * h22) - dr[0] * (col1 * h22) - dr[1] * (h11 * col2);
  return c * det;
}

enum class RatioKind { b_vs_rhs, b_vs_k, k_vs_ktilde };

inline std::string ratio_kind_name(RatioKind k) {
  switch (k) {
    case RatioKind::b_vs_rhs: return "b-vs-rhs";
    case RatioKind::b_vs_k: return "b-vs-k";
    case RatioKind::k_vs_ktilde: return "k-vs-ktilde";
  }
  return "?";
}

struct KernelSampleReport {
  DomainSpec domain;
  RatioKind which = RatioKind::b_vs_rhs;
  std::int64_t sample_count = 0;
  std::uint64_t seed = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  double origin_mask = kSweepOriginMask;
  double diagonal_dist_mask = kSweepDiagonalDistMask;
  double diagonal_rho_mask = kSweepDiagonalRhoMask;
};

namespace detail {

inline CPoint sample_point_in(const DomainSpec& d, SampleStream& rng) {
  double r1 = 1.0, r2 = 1.0;
  if (d.kind == DomainKind::ellipsoid) {
    r1 = d.a1;
    r2 = d.a2;
  }
  for (int tries = 0; tries < 4096; ++tries) {
    const CPoint p{cplx(rng.next_in(-r1, r1), rng.next_in(-r1, r1)),
                   cplx(rng.next_in(-r2, r2), rng.next_in(-r2, r2))};
    if (minkowski(d, p) < 1.0) return p;
  }
  throw std::runtime_error("sample_point_in: rejection failed");
}

}  // namespace detail

// Samples masked pairs from the closed domain and reports the distribution of
// the chosen kernel ratio. Streams are keyed by (seed, sample index), so a
// sweep with a larger count extends a smaller one sample-for-sample.
inline KernelSampleReport ratio_sweep(const DomainSpec& d, RatioKind which,
                                      std::int64_t count, std::uint64_t seed) {
  detail::require_smooth(d, "ratio_sweep");
  if (count < 100)
    throw std::invalid_argument("ratio_sweep: count must be >= 1e2");
  KernelSampleReport rep;
  rep.domain = d;
  rep.which = which;
  rep.sample_count = count;
  rep.seed = seed;
  double mn = std::numeric_limits<double>::infinity(), mx = 0.0, mean = 0.0;
  std::int64_t accepted = 0;
  for (std::int64_t i = 0; accepted < count; ++i) {
    if (i > 1000 * count)
      throw std::runtime_error("ratio_sweep: degenerate sample set");
    SampleStream rng(seed, static_cast<std::uint64_t>(i));
    CPoint zeta, z;
    try {
      zeta = detail::sample_point_in(d, rng);
      z = detail::sample_point_in(d, rng);
    } catch (const std::runtime_error&) {
      throw std::runtime_error("ratio_sweep: degenerate sample set");
    }
    if (norm(zeta) < kSweepOriginMask) continue;
    if (norm(zeta - z) < kSweepDiagonalDistMask &&
        std::abs(rho(d, zeta)) < kSweepDiagonalRhoMask)
      continue;
    double ratio = 0.0;
    switch (which) {
      case RatioKind::b_vs_rhs:
        ratio = std::abs(kernel_b(d, zeta, z)) / estimate_rhs(d, zeta, z);
        break;
      case RatioKind::b_vs_k:
        ratio = std::abs(kernel_b(d, zeta, z)) / std::abs(kernel_k(d, zeta, z));
        break;
      case RatioKind::k_vs_ktilde:
        ratio =
            std::abs(kernel_k(d, zeta, z)) / std::abs(kernel_k_tilde(d, zeta, z));
        break;
    }
    if (!std::isfinite(ratio))
      throw std::runtime_error("ratio_sweep: non-finite ratio sample");
    mn = std::min(mn, ratio);
    mx = std::max(mx, ratio);
    mean += ratio;
    ++accepted;
  }
  rep.min_ratio = mn;
  rep.max_ratio = mx;
  rep.mean_ratio = mean / static_cast<double>(count);
  return rep;
}

}  // namespace holodual
