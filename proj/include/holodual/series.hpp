#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "holodual/numerics.hpp"
#include "holodual/point.hpp"
#include "holodual/quadrature.hpp"

namespace holodual {

// Complex number stored as (log-magnitude, phase); survives magnitudes far
// outside double range, which the counterexample coefficient sequences need by
// k ~ 40 already.
struct LogComplex {
  double log_mag = kLogZero;
  double phase = 0.0;

  static LogComplex from(cplx v) {
    LogComplex lc;
    lc.log_mag = (v == cplx(0.0, 0.0)) ? kLogZero : std::log(std::abs(v));
    lc.phase = std::arg(v);
    return lc;
  }
  cplx value() const {
    if (!std::isfinite(log_mag)) return {0.0, 0.0};
    return std::polar(std::exp(log_mag), phase);
  }
  LogComplex conjugated() const {
    return {log_mag, phase == 0.0 ? 0.0 : -phase};
  }
};

// Sparse power series sum a_m zeta^m. Plain terms and log-form terms may
// coexist; where both carry the same index the plain term wins (they are
// meant to be consistent).
struct CoefficientSeries {
  std::map<MultiIndex, cplx> terms;
  std::map<MultiIndex, LogComplex> log_terms;

  static CoefficientSeries zero() { return {}; }
  static CoefficientSeries constant(cplx a) {
    CoefficientSeries s;
    s.terms[{0, 0}] = a;
    return s;
  }

  CoefficientSeries& set(MultiIndex m, cplx a) {
    terms[m] = a;
    return *this;
  }
  CoefficientSeries& set_log(MultiIndex m, double log_mag, double phase) {
    log_terms[m] = {log_mag, phase};
    return *this;
  }

  bool empty() const { return terms.empty() && log_terms.empty(); }

  LogComplex at(MultiIndex m) const {
    if (auto it = terms.find(m); it != terms.end())
      return LogComplex::from(it->second);
    if (auto it = log_terms.find(m); it != log_terms.end()) return it->second;
    return {};
  }

  // Visits every stored index once, plain form first.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [m, a] : terms) fn(m, LogComplex::from(a));
    for (const auto& [m, lc] : log_terms)
      if (!terms.count(m)) fn(m, lc);
  }
};

// The three coefficient-space Bergman norms of the diamond story.
enum class Space { a2_diamond, a2_polydisc, a2_pw };

inline std::string space_name(Space s) {
  switch (s) {
    case Space::a2_diamond: return "a2-diamond";
    case Space::a2_polydisc: return "a2-polydisc";
    case Space::a2_pw: return "a2-pw";
  }
  return "?";
}

// log of the norm weight per multi-index: ||f||^2 = sum |a_m|^2 weight(m).
inline double log_norm_weight(Space s, const MultiIndex& m) {
  switch (s) {
    case Space::a2_diamond:
      return log_monomial_inner_product(DomainSpec::diamond(), m, m);
    case Space::a2_polydisc:
      return log_monomial_inner_product(DomainSpec::polydisc(), m, m);
    case Space::a2_pw:
      return pw_monomial_weight(m);
  }
  return kLogZero;
}

struct NormWeightTable {
  Space space = Space::a2_diamond;
  double log_weight(const MultiIndex& m) const {
    return log_norm_weight(space, m);
  }
};

// log of sum |a_m|^2 weight(m) by log-sum-exp; -inf for the empty series
// (the log(0) sentinel, not an error).
inline double norm2_log(Space space, const CoefficientSeries& s) {
  std::vector<double> logs;
  s.for_each([&](const MultiIndex& m, const LogComplex& a) {
    logs.push_back(2.0 * a.log_mag + log_norm_weight(space, m));
  });
  if (logs.empty()) return kLogZero;
  return log_sum_exp(logs);
}

// ---------------------------------------------------------------------------
// Membership of diagonal series sum_k a_kk (z1 z2)^k, via partial-sum growth.
// ---------------------------------------------------------------------------

// log |a_kk| as a function of k >= 0; return kLogZero for absent terms.
using DiagonalGenerator = std::function<double(std::int64_t)>;

enum class Verdict { converging, diverging, inconclusive };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::converging: return "converging";
    case Verdict::diverging: return "diverging";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct MembershipReport {
  Space space = Space::a2_diamond;
  std::int64_t kmax = 0;
  Verdict verdict = Verdict::inconclusive;
  // Partial sums S(K) of |a_kk|^2 w(k,k) at K on the octave grid (plus kmax).
  std::vector<std::pair<std::int64_t, double>> profile;
  // Divergence fit S(K) ~ slope ln K + intercept over the top fit window.
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  // Geometric-decay certificate: largest ratio of consecutive increments.
  double max_increment_ratio = 0.0;
  // Relative mass of the observed tail beyond K = 1e4 (when kmax permits).
  double rel_tail_beyond_1e4 = 0.0;
  std::vector<double> fit_residuals;
};

namespace detail {
// Increments must shrink at least this fast, octave over octave, to certify
// geometric decay of the tail.
inline constexpr double kGeomRatioMax = 0.97;
// Number of top octaves used for the log-divergence fit.
inline constexpr int kFitOctaves = 8;
}  // namespace detail

// Classifies the weighted diagonal series by its partial-sum profile:
// geometric tail decay => converging; partial sums fitting a ln K + b with
// a > 0 and R^2 >= 0.999 => diverging (logarithmically); anything else is
// reported inconclusive, never silently passed.
inline MembershipReport membership(Space space, const DiagonalGenerator& gen,
                                   std::int64_t kmax) {
  if (kmax < 100) throw std::invalid_argument("membership: kmax must be >= 1e2");
  MembershipReport rep;
  rep.space = space;
  rep.kmax = kmax;

  // Octave grid plus the K = 1e4 tail anchor and the endpoint.
  std::vector<std::int64_t> grid;
  for (std::int64_t g = 1; g <= kmax; g *= 2) grid.push_back(g);
  if (kmax >= 10000) grid.push_back(10000);
  grid.push_back(kmax);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  double sum = 0.0;
  bool finite = true;
  std::size_t gi = 0;
  for (std::int64_t k = 0; k <= kmax && finite; ++k) {
    const double la = gen(k);
    if (std::isfinite(la)) {
      const double lt = 2.0 * la + log_norm_weight(space, {static_cast<int>(k),
                                                           static_cast<int>(k)});
      const double t = std::exp(lt);
      if (!std::isfinite(t)) finite = false;
      sum += t;
    }
    while (gi < grid.size() && grid[gi] == k) {
      rep.profile.emplace_back(k, sum);
      ++gi;
    }
  }
  if (!finite) {
    rep.verdict = Verdict::inconclusive;
    return rep;
  }

  const double total = rep.profile.back().second;
  if (kmax >= 10000) {
    for (const auto& [k, s] : rep.profile)
      if (k == 10000 && total > 0.0) rep.rel_tail_beyond_1e4 = (total - s) / total;
  }

  // Zero series: converging with S identically 0.
  if (total == 0.0) {
    rep.verdict = Verdict::converging;
    return rep;
  }

  // Octave points only: uniform spacing in ln K.
  std::vector<std::pair<std::int64_t, double>> octaves;
  for (const auto& pr : rep.profile)
    if ((pr.first & (pr.first - 1)) == 0) octaves.push_back(pr);

  // Geometric-decay certificate on increments S(2K) - S(K).
  std::vector<double> increments;
  for (std::size_t i = 1; i < octaves.size(); ++i)
    increments.push_back(octaves[i].second - octaves[i - 1].second);
  const std::size_t look = std::min<std::size_t>(increments.size(), 6);
  bool geometric = increments.size() >= 3;
  double max_ratio = 0.0;
  for (std::size_t i = increments.size() - look + 1;
       i < increments.size() && geometric; ++i) {
    const double prev = increments[i - 1];
    const double cur = increments[i];
    if (prev <= 0.0) {
      geometric = (cur <= 0.0);
      continue;
    }
    const double ratio = cur / prev;
    max_ratio = std::max(max_ratio, ratio);
    if (ratio > detail::kGeomRatioMax) geometric = false;
  }
  rep.max_increment_ratio = max_ratio;
  if (geometric) {
    rep.verdict = Verdict::converging;
    return rep;
  }

  // Logarithmic-divergence fit over the top octaves.
  std::vector<double> xs, ys;
  const std::size_t nfit = std::min<std::size_t>(
      octaves.size(), static_cast<std::size_t>(detail::kFitOctaves));
  for (std::size_t i = octaves.size() - nfit; i < octaves.size(); ++i) {
    xs.push_back(std::log(static_cast<double>(octaves[i].first)));
    ys.push_back(octaves[i].second);
  }
  const LineFit fit = fit_line(xs, ys);
  rep.slope = fit.slope;
  rep.intercept = fit.intercept;
  rep.r2 = fit.r2;
  for (std::size_t i = 0; i < xs.size(); ++i)
    rep.fit_residuals.push_back(ys[i] - (fit.slope * xs[i] + fit.intercept));
  if (fit.slope > 0.0 && fit.r2 >= 0.999) {
    rep.verdict = Verdict::diverging;
  } else {
    rep.verdict = Verdict::inconclusive;
  }
  return rep;
}

}  // namespace holodual
