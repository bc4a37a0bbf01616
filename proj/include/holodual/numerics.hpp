#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace holodual {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Summation
// ---------------------------------------------------------------------------

// Pairwise sum of term(i) over [lo, hi). Result is independent of how callers
// later split the range, as long as splits happen on the same midpoints.
template <typename T, typename Term>
T pairwise_sum(std::int64_t lo, std::int64_t hi, Term&& term) {
  const std::int64_t n = hi - lo;
  if (n <= 0) return T{};
  if (n <= 64) {
    T acc{};
    for (std::int64_t i = lo; i < hi; ++i) acc += term(i);
    return acc;
  }
  const std::int64_t mid = lo + n / 2;
  return pairwise_sum<T>(lo, mid, term) + pairwise_sum<T>(mid, hi, term);
}

// log(sum_i exp(x_i)) for a list of log-magnitudes; tolerates -inf entries.
inline double log_sum_exp(const std::vector<double>& xs) {
  double m = kLogZero;
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;  // all -inf (or an explicit +inf)
  const double s = pairwise_sum<double>(
      0, static_cast<std::int64_t>(xs.size()),
      [&](std::int64_t i) { return std::exp(xs[static_cast<std::size_t>(i)] - m); });
  return m + std::log(s);
}

// ---------------------------------------------------------------------------
// Log-gamma conveniences. All factorial/Beta ratios in this library go
// through these; plain factorials overflow long before the regimes we probe.
// ---------------------------------------------------------------------------

inline double log_gamma(double x) { return std::lgamma(x); }

// log n! for integer n >= 0
inline double log_factorial(std::int64_t n) {
  return std::lgamma(static_cast<double>(n) + 1.0);
}

// log B(a,b)
inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// ---------------------------------------------------------------------------
// Quadrature rules
// ---------------------------------------------------------------------------

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre nodes/weights on [-1,1], Newton iteration on P_n.
inline Rule1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  Rule1D r;
  r.x.resize(static_cast<std::size_t>(n));
  r.w.resize(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    r.x[static_cast<std::size_t>(i)] = -z;
    r.x[static_cast<std::size_t>(n - 1 - i)] = z;
    const double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    r.w[static_cast<std::size_t>(i)] = wi;
    r.w[static_cast<std::size_t>(n - 1 - i)] = wi;
  }
  return r;
}

// Gauss-Legendre mapped to (0,1).
inline Rule1D gauss_legendre01(int n) {
  Rule1D r = gauss_legendre(n);
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    r.x[i] = 0.5 * (r.x[i] + 1.0);
    r.w[i] *= 0.5;
  }
  return r;
}

// Generalized Gauss-Laguerre: integrates f(x) x^alpha e^{-x} on (0,inf)
// exactly for polynomial f of degree <= 2n-1.
inline Rule1D gauss_laguerre(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: order must be >= 1");
  Rule1D r;
  r.x.resize(static_cast<std::size_t>(n));
  r.w.resize(static_cast<std::size_t>(n));
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      z = (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * n + 1.8 * alpha);
    } else if (i == 1) {
      z += (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * n);
    } else {
      const double ai = i - 1;
      z += ((1.0 + 2.55 * ai) / (1.9 * ai) +
            1.26 * ai * alpha / (1.0 + 3.5 * ai)) *
           (z - r.x[static_cast<std::size_t>(i - 2)]) / (1.0 + 0.3 * alpha);
    }
    double pp = 0.0, p2 = 0.0;
    for (int it = 0; it < 200; ++it) {
      double p1 = 1.0;
      p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0 + alpha - z) * p2 - (j + alpha) * p3) / (j + 1.0);
      }
      // p1 = L_n(z), p2 = L_{n-1}(z); derivative via the structure relation
      pp = (n * p1 - (n + alpha) * p2) / z;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-14 * std::max(1.0, z)) break;
    }
    r.x[static_cast<std::size_t>(i)] = z;
    r.w[static_cast<std::size_t>(i)] =
        -std::exp(std::lgamma(alpha + n) - std::lgamma(static_cast<double>(n))) /
        (pp * n * p2);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Small symmetric eigenproblem (cyclic Jacobi). Enough for the 4x4 Hessians
// this library meets; no external linear algebra needed.
// ---------------------------------------------------------------------------

inline double symmetric_min_eigenvalue(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-28) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  double mn = a[0][0];
  for (std::size_t i = 1; i < n; ++i) mn = std::min(mn, a[i][i]);
  return mn;
}

// ---------------------------------------------------------------------------
// Least squares line fit y = slope*x + intercept with R^2.
// ---------------------------------------------------------------------------

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += e * e;
  }
  f.r2 = (syy > 0) ? 1.0 - ss_res / syy : 1.0;
  return f;
}

}  // namespace holodual
