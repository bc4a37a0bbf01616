#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "holodual/domain.hpp"
#include "holodual/numerics.hpp"
#include "holodual/point.hpp"
#include "holodual/prng.hpp"

namespace holodual {

struct MultiIndex {
  int m1 = 0;
  int m2 = 0;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  int degree() const { return m1 + m2; }
  bool valid() const { return m1 >= 0 && m2 >= 0; }
};

namespace detail {
inline void require_valid(const MultiIndex& m, const char* op) {
  if (!m.valid())
    throw std::invalid_argument(std::string(op) +
                                ": multi-index entries must be >= 0");
}
}  // namespace detail

enum class QuadMode { gauss, monte_carlo };

// Rule family for integrate_volume. gauss orders are per-axis node counts in
// the order (radial, simplex, angular1, angular2); the two non-angular slots
// are the two radial variables for the polydisc.
struct QuadratureSpec {
  QuadMode mode = QuadMode::gauss;
  int order_radial = 24;
  int order_simplex = 24;
  int order_angular1 = 24;
  int order_angular2 = 24;

  std::int64_t mc_samples = 100000;
  std::uint64_t seed = 20240817;

  static QuadratureSpec gauss(int radial, int simplex, int ang1, int ang2) {
    QuadratureSpec q;
    q.mode = QuadMode::gauss;
    q.order_radial = radial;
    q.order_simplex = simplex;
    q.order_angular1 = ang1;
    q.order_angular2 = ang2;
    return q;
  }
  static QuadratureSpec gauss(int order) {
    return gauss(order, order, order, order);
  }
  static QuadratureSpec monte_carlo(std::int64_t samples, std::uint64_t seed) {
    QuadratureSpec q;
    q.mode = QuadMode::monte_carlo;
    q.mc_samples = samples;
    q.seed = seed;
    return q;
  }

  void validate() const {
    if (mode == QuadMode::gauss &&
        (order_radial < 2 || order_simplex < 2 || order_angular1 < 2 ||
         order_angular2 < 2))
      throw std::invalid_argument("QuadratureSpec: node counts must be >= 2");
    if (mode == QuadMode::monte_carlo && mc_samples < 1000)
      throw std::invalid_argument("QuadratureSpec: mc_samples must be >= 1e3");
  }

  QuadratureSpec doubled() const {
    QuadratureSpec q = *this;
    q.order_radial *= 2;
    q.order_simplex *= 2;
    q.order_angular1 *= 2;
    q.order_angular2 *= 2;
    q.mc_samples *= 4;
    return q;
  }
};

// Thrown when an integrand sample is not finite; carries the offending node.
struct IntegrandError : std::runtime_error {
  CPoint node;
  explicit IntegrandError(const CPoint& p)
      : std::runtime_error("integrate_volume: non-finite integrand sample"),
        node(p) {}
};

namespace detail {

// Accumulates term(i) for i in [0,n) in fixed-size chunks. Chunk sums are
// pairwise sums and are combined in index order, so the result does not
// depend on the number of workers.
template <typename T, typename Term>
T chunked_sum(std::int64_t n, Term&& term, std::int64_t chunk = 1 << 14) {
  if (n <= chunk) return pairwise_sum<T>(0, n, term);
  const std::int64_t nchunks = (n + chunk - 1) / chunk;
  std::vector<T> partial(static_cast<std::size_t>(nchunks));
  const unsigned workers =
      worker_count(static_cast<unsigned>(std::min<std::int64_t>(nchunks, 64)));
  if (workers <= 1) {
    for (std::int64_t c = 0; c < nchunks; ++c)
      partial[static_cast<std::size_t>(c)] = pairwise_sum<T>(
          c * chunk, std::min(n, (c + 1) * chunk), term);
  } else {
    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&]() {
        try {
          for (;;) {
            const std::int64_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            partial[static_cast<std::size_t>(c)] = pairwise_sum<T>(
                c * chunk, std::min(n, (c + 1) * chunk), term);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }
  return pairwise_sum<T>(0, nchunks, [&](std::int64_t c) {
    return partial[static_cast<std::size_t>(c)];
  });
}

struct McAcc {
  cplx sum{0.0, 0.0};
  double sum_re2 = 0.0;
  double sum_im2 = 0.0;
  McAcc& operator+=(const McAcc& o) {
    sum += o.sum;
    sum_re2 += o.sum_re2;
    sum_im2 += o.sum_im2;
    return *this;
  }
  friend McAcc operator+(McAcc a, const McAcc& b) { return a += b; }
};

inline void bounding_radii(const DomainSpec& d, double& r1, double& r2) {
  if (d.kind == DomainKind::ellipsoid) {
    r1 = d.a1;
    r2 = d.a2;
  } else {
    r1 = 1.0;
    r2 = 1.0;
  }
}

// Normalization of the volume form relative to Lebesgue measure. The library
// fixes the diamond form by its parameterization density r^3 s(1-s)/2, which
// carries half the Lebesgue mass; every diamond-space norm, weight, and
// transform constant in this library is stated in that normalization, so the
// Monte Carlo path scales to the same functional.
inline double measure_normalization(const DomainSpec& d) {
  return d.kind == DomainKind::diamond ? 0.5 : 1.0;
}

}  // namespace detail

struct McResult {
  cplx value{0.0, 0.0};
  double sigma_re = 0.0;
  double sigma_im = 0.0;
  std::int64_t samples = 0;
};

// Monte Carlo integral over D: uniform proposals from the bounding polydisc,
// rejection into D, counter-based streams keyed by (seed, sample index).
template <typename F>
McResult mc_integrate_volume(const DomainSpec& d, F&& f,
                             const QuadratureSpec& q) {
  q.validate();
  double r1 = 1.0, r2 = 1.0;
  detail::bounding_radii(d, r1, r2);
  const double box_volume =
      kPi * kPi * r1 * r1 * r2 * r2 * detail::measure_normalization(d);
  const std::int64_t n = q.mc_samples;
  const auto term = [&](std::int64_t i) -> detail::McAcc {
    SampleStream rng(q.seed, static_cast<std::uint64_t>(i));
    const double rr1 = r1 * std::sqrt(rng.next());
    const double th1 = 2.0 * kPi * rng.next();
    const double rr2 = r2 * std::sqrt(rng.next());
    const double th2 = 2.0 * kPi * rng.next();
    const CPoint p{cplx(rr1 * std::cos(th1), rr1 * std::sin(th1)),
                   cplx(rr2 * std::cos(th2), rr2 * std::sin(th2))};
    detail::McAcc acc;
    if (minkowski(d, p) < 1.0) {
      const cplx v = f(p) * box_volume;
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw IntegrandError(p);
      acc.sum = v;
      acc.sum_re2 = v.real() * v.real();
      acc.sum_im2 = v.imag() * v.imag();
    }
    return acc;
  };
  const detail::McAcc acc = detail::chunked_sum<detail::McAcc>(n, term);
  McResult out;
  out.samples = n;
  out.value = acc.sum / static_cast<double>(n);
  const double nn = static_cast<double>(n);
  const double var_re =
      std::max(0.0, acc.sum_re2 / nn - out.value.real() * out.value.real());
  const double var_im =
      std::max(0.0, acc.sum_im2 / nn - out.value.imag() * out.value.imag());
  out.sigma_re = std::sqrt(var_re / nn);
  out.sigma_im = std::sqrt(var_im / nn);
  return out;
}

// Tensor Gauss integral over D in the domain's natural coordinates:
//   diamond:   (r,s,t1,t2) -> (r s e^{it1}, r(1-s) e^{it2}),  dV = r^3/2 s(1-s)
//   polydisc:  per-factor polar coordinates,                  dV = r1 r2
//   ball/ellipsoid: Reinhardt radii over the quarter-region
//     r1^2/a1^2 + r2^2/a2^2 < 1, with the radial simplex mapped smoothly by
//     r1 = a1 sqrt(s t), r2 = a2 sqrt(s (1-t)),               dV = a1^2a2^2/4 s
// Angular axes use the 2pi-periodic rectangle rule, which is exact for
// trigonometric polynomials below the node count.
template <typename F>
cplx gauss_integrate_volume(const DomainSpec& d, F&& f,
                            const QuadratureSpec& q) {
  q.validate();
  const Rule1D ra = gauss_legendre01(q.order_radial);
  const Rule1D rb = gauss_legendre01(q.order_simplex);
  const int m1 = q.order_angular1;
  const int m2 = q.order_angular2;
  const double aw = (2.0 * kPi / m1) * (2.0 * kPi / m2);
  const std::int64_t n =
      static_cast<std::int64_t>(q.order_radial) * q.order_simplex * m1 * m2;

  const auto term = [&](std::int64_t idx) -> cplx {
    const int i2 = static_cast<int>(idx % m2);
    std::int64_t rest = idx / m2;
    const int i1 = static_cast<int>(rest % m1);
    rest /= m1;
    const int ib = static_cast<int>(rest % q.order_simplex);
    const int ia = static_cast<int>(rest / q.order_simplex);

    const double xa = ra.x[static_cast<std::size_t>(ia)];
    const double xb = rb.x[static_cast<std::size_t>(ib)];
    const double wab = ra.w[static_cast<std::size_t>(ia)] *
                       rb.w[static_cast<std::size_t>(ib)];
    const double t1 = 2.0 * kPi * i1 / m1;
    const double t2 = 2.0 * kPi * i2 / m2;
    const cplx e1 = std::polar(1.0, t1);
    const cplx e2 = std::polar(1.0, t2);

    CPoint p;
    double density = 0.0;
    switch (d.kind) {
      case DomainKind::diamond: {
        const double r = xa, s = xb;
        p = CPoint{r * s * e1, r * (1.0 - s) * e2};
        density = 0.5 * r * r * r * s * (1.0 - s);
        break;
      }
      case DomainKind::polydisc: {
        p = CPoint{xa * e1, xb * e2};
        density = xa * xb;
        break;
      }
      case DomainKind::ball:
      case DomainKind::ellipsoid: {
        const double s = xa, t = xb;
        const double r1 = d.a1 * std::sqrt(s * t);
        const double r2 = d.a2 * std::sqrt(s * (1.0 - t));
        p = CPoint{r1 * e1, r2 * e2};
        density = 0.25 * d.a1 * d.a1 * d.a2 * d.a2 * s;
        break;
      }
    }
    const cplx v = f(p);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw IntegrandError(p);
    return v * (density * wab * aw);
  };
  return detail::chunked_sum<cplx>(n, term);
}

// Approximates the volume integral of f over D per the selected rule family.
template <typename F>
cplx integrate_volume(const DomainSpec& d, F&& f, const QuadratureSpec& q) {
  if (q.mode == QuadMode::monte_carlo)
    return mc_integrate_volume(d, std::forward<F>(f), q).value;
  return gauss_integrate_volume(d, std::forward<F>(f), q);
}

// log of the exact monomial inner product int_D conj(zeta^m) zeta^k dV for
// the Reinhardt pair diamond/polydisc; -inf off the diagonal.
inline double log_monomial_inner_product(const DomainSpec& d,
                                         const MultiIndex& m,
                                         const MultiIndex& k) {
  detail::require_valid(m, "monomial_inner_product");
  detail::require_valid(k, "monomial_inner_product");
  if (d.kind != DomainKind::diamond && d.kind != DomainKind::polydisc)
    throw std::invalid_argument(
        "monomial_inner_product: closed form only for diamond/polydisc");
  if (!(m == k)) return kLogZero;
  if (d.kind == DomainKind::diamond) {
    // 2 pi^2 B(2m1+2, 2m2+2) / (2m1+2m2+4), from the pull-back of Lebesgue
    // measure under the diamond parameterization.
    return std::log(2.0 * kPi * kPi) +
           log_beta(2.0 * m.m1 + 2.0, 2.0 * m.m2 + 2.0) -
           std::log(2.0 * m.m1 + 2.0 * m.m2 + 4.0);
  }
  return 2.0 * std::log(kPi) - std::log(m.m1 + 1.0) - std::log(m.m2 + 1.0);
}

inline double monomial_inner_product(const DomainSpec& d, const MultiIndex& m,
                                     const MultiIndex& k) {
  const double lg = log_monomial_inner_product(d, m, k);
  return std::isfinite(lg) ? std::exp(lg) : 0.0;
}

// log of int_M |z^m|^2 e^{-2 max(|z1|,|z2|)} r^{5/2} dr dpsi1 dpsi2 over the
// Monge-Ampere support M = {|z1|=|z2|=r}, with the measure normalized to
// exactly dr dpsi1 dpsi2. Closed form (2pi)^2 Gamma(2|m|+7/2) / 2^{2|m|+7/2}.
inline double pw_monomial_weight(const MultiIndex& m) {
  detail::require_valid(m, "pw_monomial_weight");
  const double e = 2.0 * m.m1 + 2.0 * m.m2 + 3.5;
  return 2.0 * std::log(2.0 * kPi) + std::lgamma(e) - e * std::log(2.0);
}

}  // namespace holodual
