#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tailvar/catalog.hpp"
#include "tailvar/hazard.hpp"

using namespace tailvar;

TEST_CASE("hazard rates of reference distributions") {
  CHECK(hazard_rate(exponential(2.0).distribution).value(3.0) == Catch::Approx(2.0));
  CHECK(hazard_rate(pareto(2.0).distribution).value(4.0) == Catch::Approx(0.5));
  // h(t)/t -> 1 for the normal; h(10)/10 inside [0.99, 1.01]
  auto hn = hazard_rate(standard_normal().distribution);
  const double scaled = hn.value(10.0) / 10.0;
  CHECK(scaled == Catch::Approx(1.009809323396251).epsilon(1e-12));  // mpmath
  CHECK((scaled >= 0.99 && scaled <= 1.01));
  // stays exact far beyond survival underflow
  CHECK(hn.value(1e15) / 1e15 == Catch::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(hazard_rate(slow_survival().distribution), domain_error);
}

TEST_CASE("reciprocal hazard R(t)") {
  // memoryless: R = 1/lambda at any t
  const auto e2 = exponential(2.0).distribution;
  for (double t : {0.0, 1.0, 7.0}) CHECK(reciprocal_hazard_R(e2, t) == Catch::Approx(0.5));
  // Pareto(3): R(t) = t/2
  CHECK(reciprocal_hazard_R(pareto(3.0).distribution, 10.0) == Catch::Approx(5.0));
  // normal at t = 5; frozen mpmath oracle. R(5)*5 = 0.93252: the first-order
  // gloss R ~ 1/t is ~7% off at t = 5, so the assert targets the oracle.
  const double R5 = reciprocal_hazard_R(standard_normal().distribution, 5.0);
  CHECK(R5 == Catch::Approx(0.1865039671258421).epsilon(1e-7));
  CHECK(std::abs(R5 * 5.0 - 1.0) <= 0.07);
  // trend toward 1: frozen R(7)*7
  const double R7 = reciprocal_hazard_R(standard_normal().distribution, 7.0);
  CHECK(R7 * 7.0 == Catch::Approx(0.9628192925855229).epsilon(1e-7));
  CHECK(std::abs(R7 * 7.0 - 1.0) < std::abs(R5 * 5.0 - 1.0));
  // infinite mean: typed error
  CHECK_THROWS_AS(reciprocal_hazard_R(pareto(1.0).distribution, 5.0),
                  tail_integral_error);
}

TEST_CASE("cumulative hazard") {
  TailFunction ghalf([](double) { return 0.5; }, std::nullopt, 0.0, "1/2");
  CHECK(cumulative_hazard(ghalf, 0.0, 3.0) == Catch::Approx(6.0));
  TailFunction ginv([](double t) { return 1.0 / t; }, std::nullopt, 1.0, "1/t");
  CHECK(cumulative_hazard(ginv, 1.0, 4.0) == Catch::Approx(7.5));
  TailFunction gt([](double t) { return t; }, std::nullopt, 1.0, "t");
  CHECK(cumulative_hazard(gt, 1.0, std::exp(2.0)) == Catch::Approx(2.0));
  CHECK_THROWS_AS(cumulative_hazard(gt, 2.0, 1.0), domain_error);
}

TEST_CASE("hazard view: H, inverse, psi") {
  TailFunction ginv([](double t) { return 1.0 / t; }, std::nullopt, 1.0, "1/t",
                    [](double t) { return -std::log(t); },
                    [](double t) { return -1.0 / t; });
  HazardView view(ginv, 1.0);
  SECTION("h * g = 1 on probes") {
    for (double t : ProbeGrid(8, 2, 12).points())
      CHECK(view.hazard().value(t) * view.reciprocal().value(t) ==
            Catch::Approx(1.0).epsilon(1e-10));
  }
  SECTION("H additivity and round trips") {
    const double whole = view.H(64.0);
    TailFunction g2 = ginv;
    const double split = cumulative_hazard(g2, 1.0, 17.0) + cumulative_hazard(g2, 17.0, 64.0);
    CHECK(whole == Catch::Approx(split).epsilon(1e-9));
    CHECK(view.H_inverse(7.5) == Catch::Approx(4.0).epsilon(1e-7));
    CHECK(view.H(view.H_inverse(33.0)) == Catch::Approx(33.0).epsilon(1e-6));
  }
  SECTION("psi closed form: H = (t^2-1)/2, Psi(y) = 1/sqrt(2y+1)") {
    CHECK(view.psi(4.0) == Catch::Approx(1.0 / 3.0).epsilon(1e-7));
  }
  SECTION("constant g") {
    TailFunction ghalf([](double) { return 0.5; }, std::nullopt, 0.0, "1/2");
    HazardView hc(ghalf, 0.0);
    CHECK(hc.H_inverse(6.0) == Catch::Approx(3.0).epsilon(1e-7));
    CHECK(hc.psi(17.0) == Catch::Approx(0.5));
  }
}

TEST_CASE("normal hazard view") {
  auto view = HazardView::from_distribution(standard_normal().distribution);
  CHECK(view.H(20.0) == Catch::Approx(202.076133726088).epsilon(1e-8));  // mpmath
  CHECK(view.H_inverse(view.H(5.0)) == Catch::Approx(5.0).epsilon(1e-5));
  // Psi(y+1)/Psi(y) -> 1; oracle sqrt(y/(y+1)) from the asymptotic g = 1/t
  const double y = view.H(20.0);
  const double ratio = view.psi(y + 1.0) / view.psi(y);
  CHECK(std::abs(ratio - 1.0) <= 1e-2);
  CHECK(ratio == Catch::Approx(std::sqrt(y / (y + 1.0))).margin(1e-3));
}

TEST_CASE("survival reconstruction from the hazard") {
  // exp{-(H(t)-H(a))} = survival(t)/survival(a) for every catalog entry
  // with a density
  for (const auto& e : catalog()) {
    if (!e.distribution.has_density()) continue;
    auto view = HazardView::from_distribution(e.distribution);
    const double a = std::max(view.t0(), 1.0);
    for (double t : {7.0, 19.0, 37.0}) {
      const double lhs = std::exp(-(view.H(t) - view.H(a)));
      const double rhs = e.distribution.survival.ratio(t, a);
      INFO(e.distribution.label);
      CHECK(lhs == Catch::Approx(rhs).epsilon(1e-6));
    }
  }
}

TEST_CASE("saturating cumulative hazard raises the typed error") {
  // g = e^t: H is bounded by 1, so level 2 is unreachable
  TailFunction gexp([](double t) { return std::exp(t); }, std::nullopt, 0.0, "e^t",
                    [](double t) { return t; }, [](double) { return 1.0; });
  HazardView view(gexp, 0.0);
  CHECK_THROWS_AS(view.H_inverse(2.0), saturation_error);
}
