#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "tailvar/catalog.hpp"
#include "tailvar/evt.hpp"

using namespace tailvar;

TEST_CASE("domains of attraction") {
  const auto p = domain_of_attraction(pareto(2.0).distribution);
  REQUIRE(p.kind == EvtDomainKind::Frechet);
  CHECK(p.alpha == Catch::Approx(2.0).margin(1e-2));

  CHECK(domain_of_attraction(standard_normal().distribution).kind ==
        EvtDomainKind::Gumbel);
  CHECK(domain_of_attraction(exponential(1.0).distribution).kind ==
        EvtDomainKind::Gumbel);
  CHECK(domain_of_attraction(slow_survival().distribution).kind ==
        EvtDomainKind::None);
}

TEST_CASE("normalizing constants") {
  SECTION("pareto: quantile scaling") {
    const auto dom = domain_of_attraction(pareto(2.0).distribution);
    const auto [a, b] = normalizing_constants(pareto(2.0).distribution, dom, 100);
    CHECK(a == Catch::Approx(10.0).epsilon(1e-6));
    CHECK(b == 0.0);
  }
  SECTION("exponential: b_n = log n, a_n = 1") {
    const auto dom = domain_of_attraction(exponential(1.0).distribution);
    const long n = std::lround(std::exp(10.0));
    const auto [a, b] = normalizing_constants(exponential(1.0).distribution, dom, n);
    CHECK(b == Catch::Approx(10.0).margin(1e-4));
    CHECK(a == Catch::Approx(1.0).epsilon(1e-6));
  }
  SECTION("normal at n = 1e4: frozen mpmath oracles") {
    const auto d = standard_normal().distribution;
    const auto dom = domain_of_attraction(d);
    const auto [a, b] = normalizing_constants(d, dom, 10000);
    CHECK(b == Catch::Approx(3.719016485455681).epsilon(1e-6));
    CHECK(a == Catch::Approx(0.2394631821436682).epsilon(1e-5));
    // the first-order gloss a_n ~ 1/b_n is ~11% off at this n
    CHECK(std::abs(a * b - 1.0) <= 0.15);
  }
}

TEST_CASE("block maxima simulation") {
  const auto d = exponential(1.0).distribution;
  EvtDomain dom;
  dom.kind = EvtDomainKind::Gumbel;
  SECTION("degenerate n = 1 returns the raw samples") {
    // b_1 = survival quantile at level 1: the domain origin
    const auto [a, b] = normalizing_constants(d, dom, 1);
    CHECK(b == 0.0);
    CHECK(a == Catch::Approx(1.0).epsilon(1e-6));
    auto mx = simulate_maxima(d, dom, 1, 3, 5, a, b);
    REQUIRE(mx.size() == 3);
    for (std::size_t i = 0; i < mx.size(); ++i) {
      CounterStream stream(5, i);
      CHECK(mx[i] == (*d.sampler)(stream.uniform(0)) / a - 0.0);
    }
  }
  SECTION("seed determinism") {
    auto a = simulate_maxima(d, dom, 100, 500, 42, 1.0, std::log(100.0));
    auto b = simulate_maxima(d, dom, 100, 500, 42, 1.0, std::log(100.0));
    CHECK(a == b);
    auto c = simulate_maxima(d, dom, 100, 500, 43, 1.0, std::log(100.0));
    CHECK(a != c);
  }
  SECTION("missing sampler is a typed error") {
    Distribution nosampler = d;
    nosampler.sampler.reset();
    CHECK_THROWS_AS(simulate_maxima(nosampler, dom, 10, 10, 1, 1.0, 0.0), domain_error);
  }
}

TEST_CASE("frechet(1) median of normalized pareto(1) maxima") {
  const auto d = pareto(1.0).distribution;
  const auto dom = domain_of_attraction(d);
  REQUIRE(dom.kind == EvtDomainKind::Frechet);
  const auto [a, b] = normalizing_constants(d, dom, 1000);
  auto mx = simulate_maxima(d, dom, 1000, 1000, 11, a, b);
  std::sort(mx.begin(), mx.end());
  const double median = 0.5 * (mx[499] + mx[500]);
  CHECK(std::abs(median - 1.0 / std::log(2.0)) <= 0.1 * (1.0 / std::log(2.0)));
}

TEST_CASE("gumbel median of normalized normal maxima") {
  const auto d = standard_normal().distribution;
  const auto dom = domain_of_attraction(d);
  const auto [a, b] = normalizing_constants(d, dom, 10000);
  auto mx = simulate_maxima(d, dom, 10000, 1000, 11, a, b);
  std::sort(mx.begin(), mx.end());
  const double median = 0.5 * (mx[499] + mx[500]);
  CHECK(std::abs(median - 0.36651292058166435) <= 0.1);
}

TEST_CASE("ks distance") {
  EvtDomain gum;
  gum.kind = EvtDomainKind::Gumbel;
  SECTION("exact gumbel sample: inside the 99% DKW band") {
    std::vector<double> s(10000);
    CounterStream rng(123, 0);
    for (std::size_t i = 0; i < s.size(); ++i)
      s[i] = gumbel_quantile(rng.uniform(i));
    CHECK(ks_distance(s, gum) <= 0.02);
  }
  SECTION("single point at the limit median") {
    CHECK(ks_distance({-std::log(std::log(2.0))}, gum) == Catch::Approx(0.5));
  }
  SECTION("all points equal") {
    std::vector<double> s(50, 0.8);
    CHECK(ks_distance(s, gum) >= 0.5);
  }
  SECTION("empty sample is an error") {
    CHECK_THROWS_AS(ks_distance({}, gum), domain_error);
  }
}

TEST_CASE("convergence trend in n") {
  auto trend = [](const Distribution& d) {
    const auto dom = domain_of_attraction(d);
    const auto [a2, b2] = normalizing_constants(d, dom, 100);
    const auto ks2 =
        ks_distance(simulate_maxima(d, dom, 100, 2000, 7, a2, b2), dom);
    const auto [a4, b4] = normalizing_constants(d, dom, 10000);
    const auto ks4 =
        ks_distance(simulate_maxima(d, dom, 10000, 2000, 7, a4, b4), dom);
    return std::pair<double, double>(ks2, ks4);
  };
  const auto [e2, e4] = trend(exponential(1.0).distribution);
  CHECK(e4 <= e2 + 0.01);
  const auto [p2, p4] = trend(pareto(2.0).distribution);
  CHECK(p4 <= p2 + 0.01);
}

TEST_CASE("full evt report rows") {
  auto rep = run_evt(exponential(1.0).distribution, {100, 1000, 10000}, 500, 3);
  REQUIRE(rep.domain.kind == EvtDomainKind::Gumbel);
  REQUIRE(rep.rows.size() == 3);
  // ks nonincreasing in n up to one inversion
  int inversions = 0;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].ks > rep.rows[i - 1].ks) ++inversions;
  CHECK(inversions <= 1);
  for (const auto& row : rep.rows) {
    CHECK(row.a_n == Catch::Approx(1.0).epsilon(1e-6));
    CHECK(row.b_n == Catch::Approx(std::log(double(row.n))).margin(1e-6));
  }
}
