#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "holodual/holodual.hpp"

#ifndef HOLODUAL_CLI_PATH
#define HOLODUAL_CLI_PATH "holodual"
#endif

using namespace holodual;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

struct CliRun {
  int exit_code;
  std::string stdout_text;
};

CliRun run_cli(const std::string& args) {
  const std::string out_path = "/tmp/holodual_cli_stdout.txt";
  const std::string cmd = std::string(HOLODUAL_CLI_PATH) + " " + args + " > " +
                          out_path + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  CliRun r;
  r.exit_code = WEXITSTATUS(rc);
  r.stdout_text = slurp(out_path);
  return r;
}

}  // namespace

TEST_CASE("JSON round trips") {
  SECTION("domains") {
    for (const auto& d :
         {DomainSpec::ball(), DomainSpec::diamond(), DomainSpec::polydisc(),
          DomainSpec::ellipsoid(1.0, 2.0)}) {
      const DomainSpec back = domain_from_json(to_json(d));
      CHECK(back == d);
    }
    CHECK(to_json(DomainSpec::ellipsoid(1.0, 2.0)).dump() ==
          R"({"axes":[1.0,2.0],"variant":"ellipsoid"})");
  }
  SECTION("quadrature spec") {
    QuadratureSpec q = QuadratureSpec::monte_carlo(5000, 99);
    q.order_radial = 10;
    const QuadratureSpec back = quadrature_from_json(to_json(q));
    CHECK(back.mode == q.mode);
    CHECK(back.mc_samples == q.mc_samples);
    CHECK(back.seed == q.seed);
    CHECK(back.order_radial == q.order_radial);
  }
  SECTION("series with plain and log terms") {
    CoefficientSeries s;
    s.set({1, 2}, cplx(0.5, -0.25));
    s.set_log({40, 40}, 1234.5, 0.75);
    const CoefficientSeries back = series_from_json(to_json(s));
    CHECK(back.terms.at({1, 2}) == cplx(0.5, -0.25));
    CHECK(back.log_terms.at({40, 40}).log_mag == 1234.5);
    CHECK(back.log_terms.at({40, 40}).phase == 0.75);
  }
  SECTION("non-finite reals travel as strings") {
    CHECK(json_real(kLogZero).is_string());
    CHECK(real_from_json(json_real(kLogZero)) == kLogZero);
  }
}

TEST_CASE("cli: laplace of the constant prints the diamond volume") {
  spit("/tmp/holodual_one.json", R"({"terms":[{"m":[0,0],"re":1.0,"im":0.0}]})");
  const CliRun r = run_cli(
      "transform --kind laplace --path quad --domain diamond "
      "--in /tmp/holodual_one.json --z \"0,0;0,0\"");
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_text.substr(0, 8) == "0.822467");
}

TEST_CASE("cli: norm of the empty series is the log(0) sentinel, exit 0") {
  spit("/tmp/holodual_empty.json", R"({"terms":[]})");
  const CliRun r =
      run_cli("norm --space a2-polydisc --in /tmp/holodual_empty.json");
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_text.find("-inf") != std::string::npos);
  CHECK(r.stdout_text.find("\"empty_series\": true") != std::string::npos);
}

TEST_CASE("cli: counterexample run writes the slope metric") {
  const CliRun r = run_cli(
      "counterexample --which fantappie --kmax 20000 --out "
      "/tmp/holodual_ce.json");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(slurp("/tmp/holodual_ce.json"));
  CHECK(j.at("status") == "pass");
  CHECK(j.at("metrics").at("preimage_diamond_slope").get<double>() > 0.0);
}

TEST_CASE("cli: identical argv and seed give byte-identical outputs") {
  const std::string args =
      "kernel-sweep --domain ball --which b-vs-rhs --count 500 --seed 7 --out ";
  REQUIRE(run_cli(args + "/tmp/holodual_s1.json").exit_code == 0);
  REQUIRE(run_cli(args + "/tmp/holodual_s2.json").exit_code == 0);
  CHECK(slurp("/tmp/holodual_s1.json") == slurp("/tmp/holodual_s2.json"));
  CHECK(!slurp("/tmp/holodual_s1.json").empty());
}

TEST_CASE("cli: results do not depend on the worker count") {
  const std::string args =
      " verify --test change-of-variables --mc-samples 100000 --seed 5 --out ";
  const std::string c1 = std::string("HOLODUAL_THREADS=1 ") + HOLODUAL_CLI_PATH +
                         args + "/tmp/holodual_t1.json 2>/dev/null";
  const std::string c2 = std::string("HOLODUAL_THREADS=4 ") + HOLODUAL_CLI_PATH +
                         args + "/tmp/holodual_t4.json 2>/dev/null";
  REQUIRE(WEXITSTATUS(std::system(c1.c_str())) == 0);
  REQUIRE(WEXITSTATUS(std::system(c2.c_str())) == 0);
  CHECK(slurp("/tmp/holodual_t1.json") == slurp("/tmp/holodual_t4.json"));
  CHECK(!slurp("/tmp/holodual_t1.json").empty());
}

TEST_CASE("cli: kernel sweep csv has one row per statistic") {
  const CliRun r = run_cli(
      "kernel-sweep --domain ball --which k-vs-ktilde --count 500 --seed 3 "
      "--format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_text.find("min_ratio,") != std::string::npos);
  CHECK(r.stdout_text.find("mean_ratio,") != std::string::npos);
  CHECK(r.stdout_text.find("origin_mask,") != std::string::npos);
}

TEST_CASE("cli: malformed series file exits 2 with line/column diagnostics") {
  spit("/tmp/holodual_bad.json", "{\"terms\": [\n  {\"m\": [0");
  const std::string cmd = std::string(HOLODUAL_CLI_PATH) +
                          " transform --kind laplace --path quad --domain "
                          "diamond --in /tmp/holodual_bad.json --z \"0,0;0,0\" "
                          "2> /tmp/holodual_bad_err.txt";
  const int rc = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(rc) == 2);
  const std::string err = slurp("/tmp/holodual_bad_err.txt");
  CHECK(err.find("holodual_bad.json:2:") != std::string::npos);
}

TEST_CASE("cli: an overridden tolerance can fail a verification, exit 1") {
  const CliRun r = run_cli("verify --test composition --tol 1e-18");
  CHECK(r.exit_code == 1);
  const CliRun ok = run_cli("verify --test composition --tol 1e-6");
  CHECK(ok.exit_code == 0);
}

TEST_CASE("cli: unknown flags are rejected with the usage exit code") {
  const CliRun r = run_cli("norm --space a2-polydisc --no-such-flag");
  CHECK(r.exit_code == 2);
}

TEST_CASE("cli: coefficient-space fantappie is diamond-only") {
  spit("/tmp/holodual_one2.json", R"({"terms":[{"m":[0,0],"re":1.0,"im":0.0}]})");
  const CliRun r = run_cli(
      "transform --kind fantappie --path coeff --domain polydisc "
      "--in /tmp/holodual_one2.json");
  CHECK(r.exit_code == 2);
}

TEST_CASE("cli: verify composition emits a JSON-lines report and exits 0") {
  const CliRun r = run_cli("verify --test composition");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.stdout_text);
  CHECK(j.at("test_id") == "composition-borel-laplace-fantappie");
  CHECK(j.at("status") == "pass");
}
