#pragma once

#include "holodual/holodual.hpp"

namespace holodual::testing {

// Uniform point of the open domain, rejection from the bounding polydisc.
inline CPoint random_point_in(const DomainSpec& d, SampleStream& rng) {
  const double r1 = d.kind == DomainKind::ellipsoid ? d.a1 : 1.0;
  const double r2 = d.kind == DomainKind::ellipsoid ? d.a2 : 1.0;
  for (;;) {
    const CPoint p{cplx(rng.next_in(-r1, r1), rng.next_in(-r1, r1)),
                   cplx(rng.next_in(-r2, r2), rng.next_in(-r2, r2))};
    if (minkowski(d, p) < 1.0) return p;
  }
}

inline CPoint random_nonzero(SampleStream& rng, double scale = 2.0) {
  for (;;) {
    const CPoint p{cplx(rng.next_in(-scale, scale), rng.next_in(-scale, scale)),
                   cplx(rng.next_in(-scale, scale), rng.next_in(-scale, scale))};
    if (norm(p) > 1e-3) return p;
  }
}

// Random polynomial with |m| <= max_degree per index and unit-box coefficients.
inline CoefficientSeries random_polynomial(int max_degree, std::uint64_t seed,
                                           int terms = 12) {
  CoefficientSeries s;
  SampleStream rng(seed, 0);
  for (int t = 0; t < terms; ++t) {
    const int m1 = static_cast<int>(rng.next() * (max_degree + 1));
    const int m2 = static_cast<int>(rng.next() * (max_degree + 1 - m1));
    s.terms[{m1, m2}] = cplx(rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0));
  }
  return s;
}

}  // namespace holodual::testing
