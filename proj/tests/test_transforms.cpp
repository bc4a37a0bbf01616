#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "holodual/holodual.hpp"

using namespace holodual;
using holodual::testing::random_polynomial;

namespace {
const DomainSpec kBall = DomainSpec::ball();
const DomainSpec kDiamond = DomainSpec::diamond();
const CoefficientSeries kOne = CoefficientSeries::constant({1.0, 0.0});
const QuadratureSpec kQ = QuadratureSpec::gauss(24, 24, 32, 32);
}  // namespace

TEST_CASE("Fantappie transform by quadrature") {
  SECTION("constant on the diamond at z = 0, against the volume oracle") {
    const double vol =
        integrate_volume(kDiamond, [](const CPoint&) { return cplx(1.0, 0.0); },
                         kQ)
            .real();
    const cplx got = fantappie_quad(kDiamond, kOne, CPoint{}, 3, kQ);
    CHECK(std::abs(got - cplx(2.0 / (kPi * kPi) * vol, 0.0)) < 1e-12);
    CHECK(std::abs(got - cplx(1.0 / 6.0, 0.0)) < 1e-12);
  }
  SECTION("ball reflection identity for a coordinate function") {
    CoefficientSeries f;
    f.set({1, 0}, {1.0, 0.0});  // f = zeta_1
    const CPoint z{cplx(0.3, 0.0), cplx(0.0, 0.1)};
    const cplx got = fantappie_quad(kBall, f, z, 3, kQ);
    const cplx want = std::conj(evaluate_polynomial(f, conj(z)));  // = z_1
    CHECK(std::abs(got - want) < 1e-8);
    CHECK(std::abs(got - cplx(0.3, 0.0)) < 1e-8);
  }
  SECTION("odd monomial vanishes at z = 0") {
    CoefficientSeries f;
    f.set({1, 0}, {1.0, 0.0});
    CHECK(std::abs(fantappie_quad(kDiamond, f, CPoint{}, 3, kQ)) < 1e-14);
  }
  SECTION("evaluation point must lie in the dual complement") {
    CHECK_THROWS_AS(
        fantappie_quad(kDiamond, kOne, {cplx(1.2, 0.0), cplx(0.0, 0.0)}, 3, kQ),
        std::domain_error);
  }
  SECTION("the quadrature path supports any exponent k") {
    // On a circled domain every positive kernel power integrates the constant
    // to the volume: only the j = 0 term of the kernel expansion survives the
    // angular integrals, so F_k(1)(z) = 1 on the ball for all k.
    const CPoint z{cplx(0.4, 0.0), cplx(0.0, 0.2)};
    for (int k : {1, 2, 3, 5}) {
      REQUIRE(std::abs(fantappie_quad(kBall, kOne, z, k, kQ) - cplx(1.0, 0.0)) <
              1e-10);
    }
    CHECK_THROWS_AS(fantappie_quad(kBall, kOne, z, 0, kQ),
                    std::invalid_argument);
  }
}

TEST_CASE("Fantappie coefficient map") {
  SECTION("constant term matches the z = 0 quadrature oracle") {
    const cplx oracle = fantappie_quad(kDiamond, kOne, CPoint{}, 3, kQ);
    const CoefficientSeries t = fantappie_coeff(kOne);
    CHECK(std::abs(t.at({0, 0}).value() - oracle) < 1e-12);
  }
  SECTION("zero maps to zero") {
    const CoefficientSeries t = fantappie_coeff(CoefficientSeries::zero());
    CHECK(t.empty());
  }
  SECTION("linear term pinned by the divided-difference oracle") {
    CoefficientSeries f;
    f.set({1, 0}, {1.0, 0.0});
    // F_3(zeta_1) = t_10 z_1 exactly, so a central divided difference along
    // z_1 recovers t_10 up to quadrature error.
    const double h = 1e-3;
    const cplx plus =
        fantappie_quad(kDiamond, f, {cplx(h, 0.0), cplx(0.0, 0.0)}, 3, kQ);
    const cplx minus =
        fantappie_quad(kDiamond, f, {cplx(-h, 0.0), cplx(0.0, 0.0)}, 3, kQ);
    const cplx oracle = (plus - minus) / (2.0 * h);
    const cplx got = fantappie_coeff(f).at({1, 0}).value();
    CHECK(std::abs(got - oracle) < 1e-9);
    CHECK(std::abs(got - cplx(0.1, 0.0)) < 1e-12);
  }
}

TEST_CASE("Laplace transform by quadrature") {
  SECTION("constant at z = 0 is the domain volume") {
    CHECK(std::abs(laplace_quad(kDiamond, kOne, CPoint{}, kQ) -
                   cplx(kPi * kPi / 12.0, 0.0)) < 1e-12);
    CHECK(std::abs(laplace_quad(kBall, kOne, CPoint{}, kQ) -
                   cplx(kPi * kPi / 2.0, 0.0)) < 1e-12);
    CHECK(std::abs(laplace_quad(DomainSpec::polydisc(), kOne, CPoint{}, kQ) -
                   cplx(kPi * kPi, 0.0)) < 1e-12);
  }
  SECTION("mean of a monomial vanishes") {
    CoefficientSeries f;
    f.set({1, 0}, {1.0, 0.0});
    CHECK(std::abs(laplace_quad(kDiamond, f, CPoint{}, kQ)) < 1e-14);
  }
}

TEST_CASE("Laplace coefficient map") {
  SECTION("constant term") {
    const cplx oracle = laplace_quad(kDiamond, kOne, CPoint{}, kQ);
    const cplx got = laplace_coeff(kOne).at({0, 0}).value();
    CHECK(std::abs(got - oracle) < 1e-12);
    CHECK(std::abs(got - cplx(kPi * kPi / 12.0, 0.0)) < 1e-13);
  }
  SECTION("zero maps to zero") {
    CHECK(laplace_coeff(CoefficientSeries::zero()).empty());
  }
  SECTION("the (1,1) multiplier in exact rational form") {
    CoefficientSeries f;
    f.set({1, 1}, {1.0, 0.0});
    // pi^2 * 3! * 3! / (1 * 1 * 4 * 7!) = pi^2 / 560
    CHECK(std::abs(laplace_coeff(f).at({1, 1}).value() -
                   cplx(kPi * kPi / 560.0, 0.0)) < 1e-14);
  }
}

TEST_CASE("Borel coefficient map") {
  // The multipliers are Gamma integrals; pin them with Gauss-Laguerre.
  const Rule1D rule = gauss_laguerre(16, 0.0);
  auto gamma_quad = [&](int p) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      double xp = 1.0;
      for (int j = 0; j < p; ++j) xp *= rule.x[i];
      s += rule.w[i] * xp;
    }
    return s;
  };
  CoefficientSeries f;
  f.set({0, 0}, {1.0, 0.0});
  f.set({1, 1}, {1.0, 0.0});
  SECTION("order 2 multipliers") {
    const CoefficientSeries b = borel_coeff(f, 2);
    CHECK(std::abs(b.at({0, 0}).value() - cplx(gamma_quad(2), 0.0)) < 1e-10);
    CHECK(std::abs(b.at({0, 0}).value() - cplx(2.0, 0.0)) < 1e-12);
    CHECK(std::abs(b.at({1, 1}).value() - cplx(gamma_quad(4), 0.0)) < 1e-8);
    CHECK(std::abs(b.at({1, 1}).value() - cplx(24.0, 0.0)) < 1e-11);
  }
  SECTION("order 0 is the identity on constants") {
    CHECK(std::abs(borel_coeff(kOne, 0).at({0, 0}).value() - cplx(1.0, 0.0)) <
          1e-15);
  }
  SECTION("negative order is rejected") {
    CHECK_THROWS_AS(borel_coeff(kOne, -1), std::invalid_argument);
  }
}

TEST_CASE("Borel transform by quadrature") {
  const QuadratureSpec q = QuadratureSpec::gauss(24);
  SECTION("constant integrand gives Gamma(3)") {
    const auto f = [](const CPoint&) { return cplx(1.0, 0.0); };
    const BorelResult r = borel_quad(kDiamond, f, {cplx(0.5, 0.0), cplx(0.0, 0.0)},
                                     2, std::nullopt, q);
    CHECK(std::abs(r.value - cplx(2.0, 0.0)) < 1e-10);
    // e^{-(1-H)T} = 1e-12 at the default truncation; the reported bound also
    // carries the T^n/(1-H) growth factor.
    CHECK(r.tail_bound < 1e-7);
  }
  SECTION("coordinate function gives 0.5 Gamma(4)") {
    const auto f = [](const CPoint& w) { return w[0]; };
    const BorelResult r = borel_quad(kDiamond, f, {cplx(0.5, 0.0), cplx(0.0, 0.0)},
                                     2, std::nullopt, q);
    CHECK(std::abs(r.value - cplx(3.0, 0.0)) < 1e-10);
  }
  SECTION("exponential against the series-summation oracle") {
    const CPoint zeta0{cplx(0.4, 0.1), cplx(0.2, -0.3)};
    const CPoint z{cplx(0.5, 0.0), cplx(0.0, 0.45)};
    const auto f = [&](const CPoint& w) { return std::exp(pairing(zeta0, w)); };
    const BorelResult r = borel_quad(kDiamond, f, z, 2, std::nullopt, q);
    // closed form sum_j w^j Gamma(j+3)/j! with w = <zeta0, z>
    const cplx w = pairing(zeta0, z);
    cplx oracle{0.0, 0.0};
    cplx wj{1.0, 0.0};
    for (int j = 0; j < 200; ++j) {
      oracle += wj * std::exp(std::lgamma(j + 3.0) - std::lgamma(j + 1.0));
      wj *= w;
    }
    CHECK(std::abs(r.value - oracle) < 1e-8);
  }
  SECTION("divergent ray is rejected") {
    const auto f = [](const CPoint&) { return cplx(1.0, 0.0); };
    CHECK_THROWS_AS(
        borel_quad(kDiamond, f, {cplx(1.1, 0.0), cplx(0.0, 0.0)}, 2,
                   std::nullopt, q),
        std::domain_error);
  }
}

TEST_CASE("composition law on coefficients") {
  SECTION("constant series, exact rational identity") {
    const VerificationReport rep = verify_composition(kOne);
    CHECK(rep.status == Status::pass);
    // l_00 * 2! = pi^2/6 = pi^2 * t_00.
    const cplx l00 = laplace_coeff(kOne).at({0, 0}).value();
    const cplx t00 = fantappie_coeff(kOne).at({0, 0}).value();
    CHECK(std::abs(2.0 * l00 - kPi * kPi * t00) < 1e-15);
  }
  SECTION("zero series is trivially equal") {
    CHECK(verify_composition(CoefficientSeries::zero()).status == Status::pass);
  }
  SECTION("random degree-40 series in log space") {
    const CoefficientSeries s = random_polynomial(40, 777, 60);
    const VerificationReport rep = verify_composition(s);
    CHECK(rep.status == Status::pass);
    CHECK(rep.metrics.at("max_log_magnitude_deviation") <= 1e-12);
  }
}

TEST_CASE("ball reflection identity across random polynomials") {
  SampleStream rng(880, 0);
  const QuadratureSpec q = QuadratureSpec::gauss(32, 32, 48, 48);
  for (int trial = 0; trial < 20; ++trial) {
    const CoefficientSeries f =
        random_polynomial(3, 2000 + static_cast<std::uint64_t>(trial), 5);
    CPoint z{cplx(rng.next_in(-0.35, 0.35), rng.next_in(-0.35, 0.35)),
             cplx(rng.next_in(-0.35, 0.35), rng.next_in(-0.35, 0.35))};
    const cplx got = fantappie_quad(kBall, f, z, 3, q);
    const cplx want = std::conj(evaluate_polynomial(f, conj(z)));
    REQUIRE(std::abs(got - want) <= 1e-6);
  }
}

TEST_CASE("coefficient and quadrature paths agree on the diamond") {
  SampleStream rng(881, 0);
  const QuadratureSpec q = QuadratureSpec::gauss(32, 32, 48, 48);
  const CoefficientSeries s = random_polynomial(4, 3000, 8);
  const CoefficientSeries t = fantappie_coeff(s);
  for (int i = 0; i < 10; ++i) {
    const CPoint z{cplx(rng.next_in(-0.45, 0.45), rng.next_in(-0.45, 0.45)),
                   cplx(rng.next_in(-0.45, 0.45), rng.next_in(-0.45, 0.45))};
    const cplx via_coeff = evaluate_polynomial(t, z);
    const cplx via_quad = fantappie_quad(kDiamond, s, z, 3, q);
    REQUIRE(std::abs(via_coeff - via_quad) <= 1e-6);
  }
}

TEST_CASE("the coefficient maps are antilinear (Borel linear)") {
  const cplx lambda{0.6, -0.8};
  CoefficientSeries s;
  s.set({2, 3}, cplx(0.4, 0.9));
  CoefficientSeries ls = s;
  ls.terms[{2, 3}] *= lambda;
  SECTION("Fantappie") {
    const cplx a = fantappie_coeff(ls).at({2, 3}).value();
    const cplx b = std::conj(lambda) * fantappie_coeff(s).at({2, 3}).value();
    CHECK(std::abs(a - b) < 1e-15);
  }
  SECTION("Laplace") {
    const cplx a = laplace_coeff(ls).at({2, 3}).value();
    const cplx b = std::conj(lambda) * laplace_coeff(s).at({2, 3}).value();
    CHECK(std::abs(a - b) < 1e-15);
  }
  SECTION("Borel") {
    const cplx a = borel_coeff(ls, 2).at({2, 3}).value();
    const cplx b = lambda * borel_coeff(s, 2).at({2, 3}).value();
    CHECK(std::abs(a - b) < 1e-13 * std::abs(b));
  }
}
