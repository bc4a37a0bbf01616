#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

#include "holodual/domain.hpp"
#include "holodual/numerics.hpp"
#include "holodual/point.hpp"
#include "holodual/quadrature.hpp"
#include "holodual/report.hpp"
#include "holodual/series.hpp"

namespace holodual {

enum class TransformPath { coeff, quad };

struct TransformKind {
  enum class Family { fantappie, laplace, borel } family = Family::fantappie;
  int fantappie_exponent = 3;  // the k of F_k; coefficient path fixes k = 3
  int borel_order = 2;         // the n of the Borel transform
};

// Evaluates a finitely supported series at z.
inline cplx evaluate_polynomial(const CoefficientSeries& s, const CPoint& z) {
  cplx acc{0.0, 0.0};
  s.for_each([&](const MultiIndex& m, const LogComplex& a) {
    cplx mono{1.0, 0.0};
    for (int i = 0; i < m.m1; ++i) mono *= z[0];
    for (int i = 0; i < m.m2; ++i) mono *= z[1];
    acc += a.value() * mono;
  });
  return acc;
}

// ---------------------------------------------------------------------------
// Integral realizations (n = 2 throughout).
// ---------------------------------------------------------------------------

// F_k(f)(z) = (2/pi^2) int_D conj(f(zeta)) (1 - <zeta,z>)^{-k} dV(zeta),
// z in the open dual domain.
template <typename FOrSeries>
cplx fantappie_quad_fn(const DomainSpec& d, FOrSeries&& f, const CPoint& z,
                       int k, const QuadratureSpec& q) {
  if (k < 1) throw std::invalid_argument("fantappie_quad: k must be >= 1");
  if (!(minkowski(dual_domain(d), z) < 1.0))
    throw std::domain_error(
        "fantappie_quad: evaluation point not in dual complement");
  const double scale = 2.0 / (kPi * kPi);
  return scale * integrate_volume(
                     d,
                     [&](const CPoint& zeta) {
                       const cplx den = cplx(1.0, 0.0) - pairing(zeta, z);
                       cplx denk{1.0, 0.0};
                       for (int i = 0; i < k; ++i) denk *= den;
                       return std::conj(f(zeta)) / denk;
                     },
                     q);
}

inline cplx fantappie_quad(const DomainSpec& d, const CoefficientSeries& f,
                           const CPoint& z, int k, const QuadratureSpec& q) {
  return fantappie_quad_fn(
      d, [&](const CPoint& zeta) { return evaluate_polynomial(f, zeta); }, z, k,
      q);
}

// L(f)(z) = int_D conj(f(zeta)) e^{<zeta,z>} dV(zeta), entire in z.
template <typename FOrSeries>
cplx laplace_quad_fn(const DomainSpec& d, FOrSeries&& f, const CPoint& z,
                     const QuadratureSpec& q) {
  return integrate_volume(
      d,
      [&](const CPoint& zeta) {
        return std::conj(f(zeta)) * std::exp(pairing(zeta, z));
      },
      q);
}

inline cplx laplace_quad(const DomainSpec& d, const CoefficientSeries& f,
                         const CPoint& z, const QuadratureSpec& q) {
  return laplace_quad_fn(
      d, [&](const CPoint& zeta) { return evaluate_polynomial(f, zeta); }, z,
      q);
}

// ---------------------------------------------------------------------------
// Coefficient realizations on the diamond (source) in log space.
// ---------------------------------------------------------------------------

// log of the F_3 multiplier: (m1+m2+1)! (2m1+1)! (2m2+1)! /
// (m1! m2! (2m1+2m2+3)!). This is the kernel-expansion constant, pinned by
// the z = 0 quadrature value F_3(1)(0) = 1/6 and by the composition law with
// the Laplace and Borel maps.
inline double log_fantappie_factor(const MultiIndex& m) {
  detail::require_valid(m, "fantappie_coeff");
  return log_factorial(m.m1 + m.m2 + 1) + log_factorial(2 * m.m1 + 1) +
         log_factorial(2 * m.m2 + 1) - log_factorial(m.m1) -
         log_factorial(m.m2) - log_factorial(2 * m.m1 + 2 * m.m2 + 3);
}

// log of the Laplace multiplier: pi^2 (2m1+1)! (2m2+1)! /
// (m1! m2! (m1+m2+2) (2m1+2m2+3)!).
inline double log_laplace_factor(const MultiIndex& m) {
  detail::require_valid(m, "laplace_coeff");
  return 2.0 * std::log(kPi) + log_factorial(2 * m.m1 + 1) +
         log_factorial(2 * m.m2 + 1) - log_factorial(m.m1) -
         log_factorial(m.m2) - std::log(m.m1 + m.m2 + 2.0) -
         log_factorial(2 * m.m1 + 2 * m.m2 + 3);
}

// log of the Borel monomial multiplier (m1+m2+n)!.
inline double log_borel_factor(const MultiIndex& m, int n) {
  return log_factorial(m.m1 + m.m2 + n);
}

namespace detail {

template <typename LogFactor>
CoefficientSeries map_coefficients(const CoefficientSeries& s,
                                   LogFactor&& log_factor, bool conjugate) {
  CoefficientSeries out;
  s.for_each([&](const MultiIndex& m, const LogComplex& a) {
    LogComplex b = conjugate ? a.conjugated() : a;
    b.log_mag += log_factor(m);
    out.log_terms[m] = b;
  });
  return out;
}

}  // namespace detail

// Diamond -> polydisc coefficient map of F_3 (antilinear).
inline CoefficientSeries fantappie_coeff(const CoefficientSeries& s) {
  return detail::map_coefficients(s, log_fantappie_factor, true);
}

// Diamond coefficient map of the Laplace transform (antilinear).
inline CoefficientSeries laplace_coeff(const CoefficientSeries& s) {
  return detail::map_coefficients(s, log_laplace_factor, true);
}

// Borel transform on monomials: z^m -> (m1+m2+n)! z^m (linear).
inline CoefficientSeries borel_coeff(const CoefficientSeries& s, int n) {
  if (n < 0) throw std::invalid_argument("borel_coeff: order must be >= 0");
  return detail::map_coefficients(
      s, [n](const MultiIndex& m) { return log_borel_factor(m, n); }, false);
}

// ---------------------------------------------------------------------------
// Borel transform by quadrature along the ray.
// ---------------------------------------------------------------------------

struct BorelResult {
  cplx value{0.0, 0.0};
  double t_cut = 0.0;       // truncation radius actually used
  double tail_bound = 0.0;  // bound on the dropped tail, up to sup_ray |F|
};

// B_n(F)(z) = int_0^inf F(tz) t^n e^{-t} dt, truncated at T and integrated by
// composite Gauss-Legendre panels. The growth domain decides convergence:
// H_source(z) < 1 is required, and the default T = |log 1e-12| / (1 - H)
// keeps the dropped tail below 1e-12 * sup_ray |F(tz)| e^{-H t}.
template <typename F>
BorelResult borel_quad(const DomainSpec& source, F&& fn, const CPoint& z,
                       int n, std::optional<double> truncation,
                       const QuadratureSpec& q) {
  if (n < 0) throw std::invalid_argument("borel_quad: order must be >= 0");
  const double h = support(source, z);
  if (h >= 1.0)
    throw std::domain_error("borel_quad: Borel integral divergent at z");
  BorelResult out;
  out.t_cut = truncation.value_or(-std::log(1e-12) / (1.0 - h));
  const int order = std::max(8, q.order_radial);
  const int panels = std::max(4, static_cast<int>(std::ceil(out.t_cut / 4.0)));
  const Rule1D rule = gauss_legendre01(order);
  cplx acc{0.0, 0.0};
  const double dt = out.t_cut / panels;
  for (int p = 0; p < panels; ++p) {
    const double t0 = p * dt;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double t = t0 + dt * rule.x[i];
      double tn = 1.0;
      for (int j = 0; j < n; ++j) tn *= t;
      acc += (dt * rule.w[i]) * fn(CPoint{t * z[0], t * z[1]}) * tn *
             std::exp(-t);
    }
  }
  out.value = acc;
  const double lam = 1.0 - h;
  const double lt = lam * out.t_cut;
  double poly = 1.0;
  if (n >= 1) poly += n / lt;
  if (n >= 2) poly += n * (n - 1.0) / (lt * lt);
  double tcn = 1.0;
  for (int j = 0; j < n; ++j) tcn *= out.t_cut;
  out.tail_bound = tcn * std::exp(-lt) / lam * poly;
  return out;
}

// ---------------------------------------------------------------------------
// Composition law: B_2 ( L f ) = pi^2 F_3 f on diamond coefficients.
// ---------------------------------------------------------------------------

inline VerificationReport verify_composition(const CoefficientSeries& s,
                                             double log_tol = 1e-12) {
  VerificationReport rep;
  rep.test_id = "composition-borel-laplace-fantappie";
  rep.domain = DomainSpec::diamond();
  const CoefficientSeries lhs = borel_coeff(laplace_coeff(s), 2);
  const CoefficientSeries rhs = fantappie_coeff(s);
  double max_log_rel = 0.0;
  double max_phase = 0.0;
  std::int64_t terms = 0;
  s.for_each([&](const MultiIndex& m, const LogComplex&) {
    const LogComplex a = lhs.at(m);
    LogComplex b = rhs.at(m);
    b.log_mag += 2.0 * std::log(kPi);
    ++terms;
    if (!std::isfinite(a.log_mag) && !std::isfinite(b.log_mag)) return;
    max_log_rel = std::max(max_log_rel, std::abs(a.log_mag - b.log_mag));
    double dp = std::remainder(a.phase - b.phase, 2.0 * kPi);
    max_phase = std::max(max_phase, std::abs(dp));
  });
  rep.metrics["term_count"] = static_cast<double>(terms);
  rep.metrics["max_log_magnitude_deviation"] = max_log_rel;
  rep.metrics["max_phase_deviation"] = max_phase;
  rep.tolerances["max_log_magnitude_deviation"] = log_tol;
  rep.tolerances["max_phase_deviation"] = log_tol;
  rep.status = (max_log_rel <= log_tol && max_phase <= log_tol) ? Status::pass
                                                                : Status::fail;
  return rep;
}

}  // namespace holodual
