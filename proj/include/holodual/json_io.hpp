#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "holodual/domain.hpp"
#include "holodual/kernels.hpp"
#include "holodual/quadrature.hpp"
#include "holodual/report.hpp"
#include "holodual/series.hpp"

namespace holodual {

using nlohmann::json;

// Non-finite reals travel as strings; JSON has no inf/nan literals.
inline json json_real(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline double real_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  return j.get<double>();
}

// --- DomainSpec: {"variant":"ellipsoid","axes":[1.0,2.0]} -------------------

inline json to_json(const DomainSpec& d) {
  json j;
  j["variant"] = domain_name(d);
  if (d.kind == DomainKind::ellipsoid) j["axes"] = {d.a1, d.a2};
  return j;
}

inline DomainSpec domain_from_json(const json& j) {
  const std::string v = j.at("variant").get<std::string>();
  if (v == "ball") return DomainSpec::ball();
  if (v == "diamond") return DomainSpec::diamond();
  if (v == "polydisc") return DomainSpec::polydisc();
  if (v == "ellipsoid") {
    const auto axes = j.at("axes");
    return DomainSpec::ellipsoid(axes.at(0).get<double>(),
                                 axes.at(1).get<double>());
  }
  throw std::invalid_argument("unknown domain variant: " + v);
}

// --- QuadratureSpec ----------------------------------------------------------

inline json to_json(const QuadratureSpec& q) {
  json j;
  j["mode"] = q.mode == QuadMode::gauss ? "gauss" : "monte-carlo";
  j["gauss_orders"] = {q.order_radial, q.order_simplex, q.order_angular1,
                       q.order_angular2};
  j["mc_samples"] = q.mc_samples;
  j["seed"] = q.seed;
  return j;
}

inline QuadratureSpec quadrature_from_json(const json& j) {
  QuadratureSpec q;
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "gauss")
    q.mode = QuadMode::gauss;
  else if (mode == "monte-carlo")
    q.mode = QuadMode::monte_carlo;
  else
    throw std::invalid_argument("unknown quadrature mode: " + mode);
  if (j.contains("gauss_orders")) {
    const auto& g = j.at("gauss_orders");
    q.order_radial = g.at(0).get<int>();
    q.order_simplex = g.at(1).get<int>();
    q.order_angular1 = g.at(2).get<int>();
    q.order_angular2 = g.at(3).get<int>();
  }
  if (j.contains("mc_samples")) q.mc_samples = j.at("mc_samples").get<std::int64_t>();
  if (j.contains("seed")) q.seed = j.at("seed").get<std::uint64_t>();
  return q;
}

// --- CoefficientSeries -------------------------------------------------------

inline json to_json(const CoefficientSeries& s) {
  json terms = json::array();
  for (const auto& [m, a] : s.terms)
    terms.push_back({{"m", {m.m1, m.m2}}, {"re", a.real()}, {"im", a.imag()}});
  json log_terms = json::array();
  for (const auto& [m, lc] : s.log_terms)
    log_terms.push_back({{"m", {m.m1, m.m2}},
                         {"logmag", json_real(lc.log_mag)},
                         {"phase", lc.phase}});
  return json{{"terms", terms}, {"log_terms", log_terms}};
}

inline CoefficientSeries series_from_json(const json& j) {
  CoefficientSeries s;
  if (j.contains("terms")) {
    for (const auto& t : j.at("terms")) {
      const auto& m = t.at("m");
      s.terms[{m.at(0).get<int>(), m.at(1).get<int>()}] =
          cplx(t.at("re").get<double>(), t.at("im").get<double>());
    }
  }
  if (j.contains("log_terms")) {
    for (const auto& t : j.at("log_terms")) {
      const auto& m = t.at("m");
      s.log_terms[{m.at(0).get<int>(), m.at(1).get<int>()}] = {
          real_from_json(t.at("logmag")), t.at("phase").get<double>()};
    }
  }
  return s;
}

// --- KernelSampleReport ------------------------------------------------------

inline json to_json(const KernelSampleReport& r) {
  json j;
  j["domain"] = to_json(r.domain);
  j["which"] = ratio_kind_name(r.which);
  j["sample_count"] = r.sample_count;
  j["seed"] = r.seed;
  j["min_ratio"] = json_real(r.min_ratio);
  j["max_ratio"] = json_real(r.max_ratio);
  j["mean_ratio"] = json_real(r.mean_ratio);
  j["origin_mask"] = r.origin_mask;
  j["diagonal_dist_mask"] = r.diagonal_dist_mask;
  j["diagonal_rho_mask"] = r.diagonal_rho_mask;
  return j;
}

// One row per summary statistic.
inline std::string to_csv(const KernelSampleReport& r) {
  std::string head = "domain," + domain_name(r.domain) + "," +
                     ratio_kind_name(r.which) + "\n";
  auto row = [&](const std::string& k, double v) {
    head += k + "," + csv_number(v) + ",\n";
  };
  row("min_ratio", r.min_ratio);
  row("max_ratio", r.max_ratio);
  row("mean_ratio", r.mean_ratio);
  row("sample_count", static_cast<double>(r.sample_count));
  row("seed", static_cast<double>(r.seed));
  row("origin_mask", r.origin_mask);
  row("diagonal_dist_mask", r.diagonal_dist_mask);
  row("diagonal_rho_mask", r.diagonal_rho_mask);
  return head;
}

// --- VerificationReport ------------------------------------------------------

inline json to_json(const VerificationReport& r) {
  json j;
  j["test_id"] = r.test_id;
  j["status"] = status_name(r.status);
  json metrics;
  for (const auto& [k, v] : r.metrics) metrics[k] = json_real(v);
  j["metrics"] = metrics;
  json tols;
  for (const auto& [k, v] : r.tolerances) tols[k] = json_real(v);
  j["tolerances"] = tols;
  json config;
  if (r.domain) config["domain"] = to_json(*r.domain);
  if (r.quadrature) config["quadrature"] = to_json(*r.quadrature);
  config["seed"] = r.seed;
  j["config"] = config;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

// One row per metric: test_id,status,metric,value,tolerance.
inline std::string to_csv_rows(const VerificationReport& r) {
  std::string out;
  for (const auto& [k, v] : r.metrics) {
    out += r.test_id + "," + status_name(r.status) + "," + k + "," +
           csv_number(v) + ",";
    if (auto it = r.tolerances.find(k); it != r.tolerances.end())
      out += csv_number(it->second);
    out += "\n";
  }
  return out;
}

// --- MembershipReport profile as plot data -----------------------------------

inline std::string profile_csv(const std::string& label,
                               const MembershipReport& m) {
  std::string out;
  for (const auto& [k, s] : m.profile)
    out += label + "," + std::to_string(k) + "," + csv_number(s) + "\n";
  return out;
}

}  // namespace holodual
