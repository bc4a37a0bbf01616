// holodual: transforms between Bergman spaces on model domains in C^2 and
// their dual realizations, with quadrature, coefficient-space norms, kernel
// sweeps, and the verification suites. All numeric output is JSON or CSV.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holodual/holodual.hpp"

namespace {

using namespace holodual;

// exit codes: 0 success / all pass, 1 test failure, 2 usage or input error
constexpr int kExitOk = 0;
constexpr int kExitTestFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "re,im;re,im" -> point of C^2
CPoint parse_point(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos)
    throw UsageError("expected z as \"re,im;re,im\", got: " + text);
  auto parse_c = [](const std::string& s) -> cplx {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
      throw UsageError("expected complex as \"re,im\", got: " + s);
    std::size_t used = 0;
    const double re = std::stod(s.substr(0, comma), &used);
    const double im = std::stod(s.substr(comma + 1), &used);
    return {re, im};
  };
  return {parse_c(text.substr(0, semi)), parse_c(text.substr(semi + 1))};
}

DomainSpec parse_domain(const std::string& name, const std::string& axes) {
  if (name == "ball") return DomainSpec::ball();
  if (name == "diamond") return DomainSpec::diamond();
  if (name == "polydisc") return DomainSpec::polydisc();
  if (name == "ellipsoid") {
    const auto comma = axes.find(',');
    if (comma == std::string::npos)
      throw UsageError("ellipsoid needs --axes a1,a2");
    return DomainSpec::ellipsoid(std::stod(axes.substr(0, comma)),
                                 std::stod(axes.substr(comma + 1)));
  }
  throw UsageError("unknown domain: " + name);
}

json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is a 1-based offset; convert to line/column for the diagnostic.
    std::size_t line = 1, col = 1;
    const std::size_t stop =
        std::min(text.size(), e.byte > 0 ? e.byte - 1 : 0);
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw UsageError(path + ":" + std::to_string(line) + ":" +
                     std::to_string(col) + ": " + e.what());
  }
}

CoefficientSeries load_series(const std::string& path) {
  try {
    return series_from_json(load_json(path));
  } catch (const json::exception& e) {
    throw UsageError(path + ": malformed series: " + e.what());
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw UsageError("cannot write file: " + out_path);
    out << text;
  }
}

std::string format_complex(cplx v) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.17g %+.17gi", v.real(), v.imag());
  return buf;
}

struct CommonOpts {
  std::string domain;  // per-subcommand default when empty
  std::string axes;
  int gauss_order = 24;
  std::int64_t mc_samples = 1000000;
  std::uint64_t seed = 20240817;
  double tol = 0.0;  // 0 = each test's built-in tolerance
  std::string out;
  std::string format = "json";

  QuadratureSpec gauss() const { return QuadratureSpec::gauss(gauss_order); }
  QuadratureSpec mc() const {
    return QuadratureSpec::monte_carlo(mc_samples, seed);
  }
  void attach(CLI::App* cmd, bool with_domain = true) {
    if (with_domain)
      cmd->add_option("--domain", domain, "ball|ellipsoid|diamond|polydisc");
    cmd->add_option("--axes", axes, "ellipsoid semi-axes a1,a2");
    cmd->add_option("--gauss-order", gauss_order,
                    "node count per axis for the tensor Gauss rule");
    cmd->add_option("--mc-samples", mc_samples, "Monte Carlo sample count");
    cmd->add_option("--seed", seed, "PRNG seed (counter-based, reproducible)");
    cmd->add_option("--tol", tol,
                    "override the pass tolerance of verification tests");
    cmd->add_option("--out", out, "write result to file instead of stdout");
    cmd->add_option("--format", format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
  }
};

int run_transform(const CommonOpts& opts, const std::string& kind,
                  const std::string& path, const std::string& in_file,
                  const std::string& z_text, int k, int order,
                  double truncation) {
  const DomainSpec d = parse_domain(
      opts.domain.empty() ? "diamond" : opts.domain, opts.axes);
  const CoefficientSeries s = load_series(in_file);
  if (path == "coeff") {
    CoefficientSeries out;
    if (kind == "fantappie") {
      if (!(d == DomainSpec::diamond()) || k != 3)
        throw UsageError(
            "coefficient-space fantappie supports only --domain diamond --k 3");
      out = fantappie_coeff(s);
    } else if (kind == "laplace") {
      if (!(d == DomainSpec::diamond()))
        throw UsageError("coefficient-space laplace supports only --domain diamond");
      out = laplace_coeff(s);
    } else if (kind == "borel") {
      out = borel_coeff(s, order);
    } else {
      throw UsageError("unknown transform kind: " + kind);
    }
    emit(to_json(out).dump(2), opts.out);
    return kExitOk;
  }
  if (path != "quad") throw UsageError("--path must be coeff or quad");
  const CPoint z = parse_point(z_text);
  cplx value;
  json extra;
  if (kind == "fantappie") {
    value = fantappie_quad(d, s, z, k, opts.gauss());
  } else if (kind == "laplace") {
    value = laplace_quad(d, s, z, opts.gauss());
  } else if (kind == "borel") {
    const auto fn = [&](const CPoint& w) { return evaluate_polynomial(s, w); };
    const BorelResult r = borel_quad(
        d, fn, z, order,
        truncation > 0 ? std::optional<double>(truncation) : std::nullopt,
        opts.gauss());
    value = r.value;
    extra["truncation_radius"] = r.t_cut;
    extra["tail_bound"] = r.tail_bound;
  } else {
    throw UsageError("unknown transform kind: " + kind);
  }
  json j;
  j["kind"] = kind;
  j["path"] = path;
  j["domain"] = to_json(d);
  j["value"] = {{"re", value.real()}, {"im", value.imag()}};
  if (!extra.is_null()) j["borel"] = extra;
  if (opts.out.empty()) {
    std::cout << format_complex(value) << "\n";
  } else {
    emit(j.dump(2), opts.out);
  }
  return kExitOk;
}

int run_norm(const CommonOpts& opts, const std::string& space_text,
             const std::string& in_file) {
  Space space;
  if (space_text == "a2-diamond")
    space = Space::a2_diamond;
  else if (space_text == "a2-polydisc")
    space = Space::a2_polydisc;
  else if (space_text == "a2-pw")
    space = Space::a2_pw;
  else
    throw UsageError("unknown space: " + space_text);
  const CoefficientSeries s = load_series(in_file);
  const double log_n2 = norm2_log(space, s);
  json j;
  j["space"] = space_name(space);
  j["log_norm2"] = json_real(log_n2);
  j["empty_series"] = s.empty();
  emit(j.dump(2), opts.out);
  return kExitOk;
}

int run_kernel_sweep(const CommonOpts& opts, const std::string& which_text,
                     std::int64_t count) {
  const DomainSpec d =
      parse_domain(opts.domain.empty() ? "ball" : opts.domain, opts.axes);
  RatioKind which;
  if (which_text == "b-vs-rhs")
    which = RatioKind::b_vs_rhs;
  else if (which_text == "b-vs-k")
    which = RatioKind::b_vs_k;
  else if (which_text == "k-vs-ktilde")
    which = RatioKind::k_vs_ktilde;
  else
    throw UsageError("unknown ratio: " + which_text);
  const KernelSampleReport rep = ratio_sweep(d, which, count, opts.seed);
  emit(opts.format == "csv" ? to_csv(rep) : to_json(rep).dump(2), opts.out);
  return kExitOk;
}

std::vector<CPoint> default_exp_norm_points() {
  std::vector<CPoint> zs;
  for (int i = 0; i < 10; ++i) {
    const double t = 1.0 + 19.0 * i / 9.0;
    zs.push_back({cplx(t, 0.0), cplx(0.0, 0.0)});
  }
  zs.push_back({cplx(0.0, 0.0), cplx(0.0, 3.0)});
  zs.push_back({cplx(2.0, 1.0), cplx(1.0, -1.0)});
  return zs;
}

std::vector<VerificationReport> run_verify_tests(const CommonOpts& opts,
                                                 const std::string& which) {
  std::vector<VerificationReport> reps;
  const bool all = which == "all";
  if (all || which == "calibration")
    reps.push_back(calibration_report(opts.gauss()));
  if (all || which == "composition") {
    CoefficientSeries s;
    for (int i = 0; i < 24; ++i) {
      SampleStream rng(opts.seed, static_cast<std::uint64_t>(i));
      const int m1 = static_cast<int>(rng.next() * 12);
      const int m2 = static_cast<int>(rng.next() * 12);
      s.set({m1, m2}, cplx(rng.next_in(-1, 1), rng.next_in(-1, 1)));
    }
    reps.push_back(opts.tol > 0 ? verify_composition(s, opts.tol)
                                : verify_composition(s));
  }
  if (all || which == "exp-norm") {
    const auto zs = default_exp_norm_points();
    const QuadratureSpec q = QuadratureSpec::gauss(opts.gauss_order);
    reps.push_back(opts.tol > 0 ? verify_exp_norm(zs, q, opts.tol)
                                : verify_exp_norm(zs, q));
  }
  if (all || which == "change-of-variables") {
    const DomainSpec d =
        parse_domain(opts.domain.empty() ? "ball" : opts.domain, opts.axes);
    const auto one = [](const CPoint&) { return cplx(1.0, 0.0); };
    reps.push_back(opts.tol > 0
                       ? verify_change_of_variables(d, one, opts.mc(), opts.tol)
                       : verify_change_of_variables(d, one, opts.mc()));
  }
  if (all || which == "ball-reproducing") {
    std::vector<CoefficientSeries> fs;
    fs.push_back(CoefficientSeries::constant({1.0, 0.0}));
    fs.push_back(CoefficientSeries{}.set({1, 0}, {1.0, 0.0}));
    fs.push_back(CoefficientSeries{}.set({1, 1}, {1.0, 0.0}));
    std::vector<CPoint> zs;
    for (int i = 0; i < 10; ++i) {
      SampleStream rng(opts.seed, 1000 + static_cast<std::uint64_t>(i));
      zs.push_back({cplx(rng.next_in(-0.35, 0.35), rng.next_in(-0.35, 0.35)),
                    cplx(rng.next_in(-0.35, 0.35), rng.next_in(-0.35, 0.35))});
    }
    const QuadratureSpec q = QuadratureSpec::gauss(20);
    reps.push_back(opts.tol > 0 ? verify_ball_reproducing(fs, zs, q, opts.tol)
                                : verify_ball_reproducing(fs, zs, q));
  }
  if (reps.empty()) throw UsageError("unknown verify test: " + which);
  return reps;
}

int run_verify(const CommonOpts& opts, const std::string& which) {
  const std::vector<VerificationReport> reps = run_verify_tests(opts, which);
  std::string text;
  if (opts.format == "csv") {
    text = "test_id,status,metric,value,tolerance\n";
    for (const auto& r : reps) text += to_csv_rows(r);
  } else {
    for (const auto& r : reps) text += to_json(r).dump() + "\n";
  }
  emit(text, opts.out);
  bool ok = true;
  for (const auto& r : reps) ok = ok && r.status == Status::pass;
  return ok ? kExitOk : kExitTestFailure;
}

int run_counterexample(const CommonOpts& opts, const std::string& which,
                       std::int64_t kmax) {
  CounterexampleResult res;
  if (which == "fantappie")
    res = counterexample_fantappie(kmax);
  else if (which == "laplace")
    res = counterexample_laplace(kmax);
  else
    throw UsageError("unknown counterexample: " + which);
  std::string text;
  if (opts.format == "csv") {
    text = "series,K,partial_sum\n";
    text += profile_csv("target", res.target);
    text += profile_csv("preimage", res.preimage);
  } else {
    text = to_json(res.report).dump(2);
  }
  emit(text, opts.out);
  return res.report.status == Status::pass ? kExitOk : kExitTestFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "holodual: Fantappie/Laplace/Borel transforms on Bergman spaces of "
      "model domains in C^2, with verification suites"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* transform = app.add_subcommand(
      "transform", "apply a transform along the coeff or quad path");
  std::string kind = "fantappie", path = "quad", in_file, z_text = "0,0;0,0";
  int fant_k = 3, borel_n = 2;
  double truncation = 0.0;
  transform->add_option("--kind", kind, "fantappie|laplace|borel")->required();
  transform->add_option("--path", path, "coeff|quad")->required();
  transform->add_option("--in", in_file, "series JSON file")->required();
  transform->add_option("--z", z_text, "evaluation point \"re,im;re,im\"");
  transform->add_option("--k", fant_k, "Fantappie kernel exponent (quad path)");
  transform->add_option("--order", borel_n, "Borel order n");
  transform->add_option("--truncation", truncation,
                        "Borel truncation radius (default: from tolerance)");
  opts.attach(transform);

  auto* norm = app.add_subcommand("norm", "coefficient-space squared norm");
  std::string space_text = "a2-diamond";
  std::string norm_in;
  norm->add_option("--space", space_text, "a2-diamond|a2-polydisc|a2-pw")
      ->required();
  norm->add_option("--in", norm_in, "series JSON file")->required();
  opts.attach(norm, false);

  auto* sweep = app.add_subcommand("kernel-sweep",
                                   "sample kernel ratio distributions");
  std::string which_ratio = "b-vs-rhs";
  std::int64_t count = 2000;
  sweep->add_option("--which", which_ratio, "b-vs-rhs|b-vs-k|k-vs-ktilde");
  sweep->add_option("--count", count, "sample count");
  opts.attach(sweep);

  auto* verify = app.add_subcommand("verify", "run verification experiments");
  std::string verify_test = "all";
  verify->add_option(
      "--test", verify_test,
      "calibration|composition|exp-norm|change-of-variables|ball-reproducing|all");
  opts.attach(verify);

  auto* counter = app.add_subcommand(
      "counterexample", "surjectivity counterexample experiments");
  std::string which_counter = "fantappie";
  std::int64_t kmax = 100000;
  counter->add_option("--which", which_counter, "fantappie|laplace");
  counter->add_option("--kmax", kmax, "largest diagonal index");
  opts.attach(counter);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(transform))
      return run_transform(opts, kind, path, in_file, z_text, fant_k, borel_n,
                           truncation);
    if (app.got_subcommand(norm)) return run_norm(opts, space_text, norm_in);
    if (app.got_subcommand(sweep))
      return run_kernel_sweep(opts, which_ratio, count);
    if (app.got_subcommand(verify)) return run_verify(opts, verify_test);
    if (app.got_subcommand(counter))
      return run_counterexample(opts, which_counter, kmax);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
