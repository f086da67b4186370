// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "tailvar/tailvar.hpp"

using namespace tailvar;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<bool()>& body) {
  bool ok = false;
  std::string note;
  const auto start = std::chrono::steady_clock::now();
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" (exception: ") + e.what() + ")";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] criterion %2d: %s (%.1fs)%s\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), secs, note.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

bool expect(bool cond, const char* what) {
  if (!cond) std::printf("       failed: %s\n", what);
  return cond;
}

TailFunction power_fn(double p, double t0 = 1.0) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "t^%g", p);
  return TailFunction([p](double t) { return std::pow(t, p); }, std::nullopt, t0, buf,
                      [p](double t) { return p * std::log(t); },
                      [p](double t) { return p / t; });
}

double elapsed_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  // 1. Classification suite at the stated tolerances, within 30 s.
  criterion(1, "classification suite", [] {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    for (double alpha : {1.0, 2.0, 3.0}) {
      const auto c = classify_tail(pareto(alpha).distribution.survival);
      ok &= expect(c.kind == TailKind::Regular && std::abs(c.index + alpha) <= 1e-2,
                   "pareto -> Regular(-alpha) within 1e-2");
    }
    {
      const auto c = classify_tail(log_tail().distribution.survival);
      ok &= expect(c.kind == TailKind::Slow, "log_tail survival -> Slow");
    }
    for (double lambda : {1.0, 2.0}) {
      const auto c = classify_tail(exponential(lambda).distribution.survival);
      ok &= expect(c.kind == TailKind::GammaClass && c.index == -1.0,
                   "exponential -> Gamma(-1)");
      ok &= expect(c.aux && std::abs(c.aux->value(11.0) * lambda - 1.0) <= 1e-6,
                   "exponential auxiliary g = 1/lambda");
    }
    {
      const auto e = standard_normal();
      const auto c = classify_tail(e.distribution.survival);
      ok &= expect(c.kind == TailKind::GammaClass && c.index == -1.0,
                   "normal -> Gamma(-1)");
      ok &= expect(
          c.aux && std::abs(c.aux->value(1e6) * 1e6 - 1.0) <= 5e-2,
          "normal auxiliary ~ 1/t");
      const auto gi = gamma_index(e.distribution.survival, *e.truth_aux);
      ok &= expect(gi.finite() && std::abs(gi.value + 1.0) <= 1e-2,
                   "normal gamma index within 1e-2 of -1");
    }
    for (double k : {1.0, 2.0}) {
      const auto c = classify_tail(weibull_hazard(k).distribution.survival);
      ok &= expect(c.kind == TailKind::GammaClass && c.index == -1.0,
                   "weibull_hazard -> Gamma(-1)");
      ok &= expect(c.aux && std::abs(c.aux->value(1e4) * std::pow(1e4, k) - 1.0) <= 5e-2,
                   "weibull_hazard auxiliary ~ t^-k");
    }
    ok &= expect(elapsed_since(start) <= 30.0, "runtime <= 30 s");
    return ok;
  });

  // 2. von Mises divergence rate for the normal: t h(t) / t^2 -> 1.
  criterion(2, "von Mises divergence rate t*h(t)/t^2 -> 1", [] {
    const auto h = hazard_rate(standard_normal().distribution);
    bool ok = true;
    const auto pts = ProbeGrid::standard().points();
    for (std::size_t i = pts.size() - 4; i < pts.size(); ++i)
      ok &= expect(std::abs(h.value(pts[i]) / pts[i] - 1.0) <= 1e-2,
                   "h(t)/t within 1e-2 at the largest probes");
    const auto est =
        estimate_limit([&](double t) { return h.value(t) / t; }, ProbeGrid::standard());
    ok &= expect(est.finite_near(1.0, 1e-2), "limit estimate Finite(1)");
    return ok;
  });

  // 3. Karamata ratios at the stated tolerances.
  criterion(3, "Karamata head/tail ratios", [] {
    bool ok = true;
    const auto head = karamata_ratio(power_fn(2.0), KaramataSide::Head);
    ok &= expect(head.finite() && std::abs(head.value - 3.0) <= 1e-3,
                 "head ratio of t^2 -> 3 within 1e-3");
    const auto tail = karamata_ratio(power_fn(-3.0), KaramataSide::Tail);
    ok &= expect(tail.finite() && std::abs(tail.value - 2.0) <= 1e-3,
                 "tail ratio of t^-3 -> 2 within 1e-3");
    const auto lt = karamata_ratio(*log_tail().distribution.density, KaramataSide::Tail);
    ok &= expect(lt.finite() && std::abs(lt.value) <= 1e-2,
                 "log_tail density tail ratio -> 0 within 1e-2");
    return ok;
  });

  // 4. Representation suite.
  criterion(4, "representation suite", [] {
    bool ok = true;
    for (const auto& e :
         {pareto(1.0), pareto(2.0), pareto(3.0), frechet(2.0), log_tail()}) {
      const double rho = e.truth.kind == TailKind::Regular ? e.truth.index : 0.0;
      const auto rep = karamata_decompose(e.distribution.survival, rho,
                                          e.distribution.survival.lower_bound());
      double worst = 0.0;
      for (const auto& r : rep.samples) worst = std::max(worst, r.residual);
      ok &= expect(worst <= 1e-6 && rep.residual <= 1e-6,
                   "reconstruction residual <= 1e-6");
      ok &= expect(std::abs(rep.samples.back().eps_or_A) <=
                       0.5 * std::abs(rep.samples.front().eps_or_A) + 1e-14,
                   "eps trend halves across the grid");
    }
    const auto nrm = standard_normal();
    const auto g = gamma_decompose(nrm.distribution.survival, -1.0, *nrm.truth_aux, 1.0);
    ok &= expect(std::abs(g.samples.back().c_or_B) <= 1e-2,
                 "normal g A'/A final sample <= 1e-2");
    ok &= expect(std::abs(g.samples.back().c_or_B) < std::abs(g.samples.front().c_or_B),
                 "normal g A'/A tends to zero");
    ok &= expect(g.residual <= 1e-6, "gamma reconstruction residual <= 1e-6");
    return ok;
  });

  // 5. Closure-law property tests.
  criterion(5, "closure-law property tests", [] {
    bool ok = true;
    std::vector<CatalogEntry> regulars = {pareto(1.0), pareto(2.0), pareto(3.0),
                                          frechet(2.0), frechet(3.0)};
    CounterStream rng(4242, 0);
    for (int trial = 0; trial < 20; ++trial) {
      const auto& e = regulars[static_cast<std::size_t>(
          rng.uniform(2 * static_cast<std::uint64_t>(trial)) * regulars.size())];
      double beta = -3.0 + 6.0 * rng.uniform(2 * static_cast<std::uint64_t>(trial) + 1);
      if (std::abs(beta) < 0.2) beta = beta < 0 ? -0.2 : 0.2;
      const auto c = classify_tail(transform_power(e.distribution.survival, beta));
      const double want = beta * e.truth.index;
      ok &= expect(c.kind == TailKind::Regular && std::abs(c.index - want) <= 2e-2,
                   "power law |index(f^b) - b rho| <= 2e-2");
    }
    for (int trial = 0; trial < 10; ++trial) {
      const auto& e1 = regulars[static_cast<std::size_t>(
          rng.uniform(1000 + 2 * static_cast<std::uint64_t>(trial)) * regulars.size())];
      const auto& e2 = regulars[static_cast<std::size_t>(
          rng.uniform(1001 + 2 * static_cast<std::uint64_t>(trial)) * regulars.size())];
      const auto c = classify_tail(
          transform_product(e1.distribution.survival, e2.distribution.survival));
      const double want = e1.truth.index + e2.truth.index;
      ok &= expect(c.kind == TailKind::Regular && std::abs(c.index - want) <= 2e-2,
                   "product law additivity within 2e-2");
    }
    const std::pair<double, double> comps[5] = {
        {2.0, 3.0}, {1.5, 2.0}, {3.0, 2.0}, {0.5, 3.0}, {2.5, 1.5}};
    for (const auto& [r1, r2] : comps) {
      const auto c = classify_tail(transform_compose(power_fn(r1), power_fn(r2)));
      ok &= expect(c.kind == TailKind::Regular && std::abs(c.index - r1 * r2) <= 2e-2,
                   "composition law within 2e-2");
    }
    return ok;
  });

  // 6. Potter bounds.
  criterion(6, "Potter bounds", [] {
    bool ok = true;
    const std::vector<double> xs = {1, 2, 4, 8};
    for (const auto& e :
         {pareto(1.0), pareto(2.0), pareto(3.0), frechet(2.0), frechet(3.0)}) {
      ok &= expect(
          potter_check(e.distribution.survival, e.truth.index, 0.1, xs).passed,
          "Regular entry satisfies Potter bounds with eps = 0.1");
    }
    ok &= expect(
        !potter_check(exponential(1.0).distribution.survival, -2.0, 0.1, {2.0}).passed,
        "e^-t escapes every power envelope");
    return ok;
  });

  // 7. Pi-class suite.
  criterion(7, "Pi-class suite", [] {
    bool ok = true;
    {
      TailFunction expt([](double t) { return std::exp(t); }, std::nullopt, 0.0, "e^t",
                        [](double t) { return t; }, [](double) { return 1.0; });
      PiOptions opt;
      opt.g = TailFunction([](double) { return 1.0; }, std::nullopt, 0.0, "1",
                           [](double) { return 0.0; }, [](double) { return 0.0; });
      const auto rep = pi_functional(expt, 0.0, opt);
      ok &= expect(rep.passed, "exponential/log identity passes");
      for (const auto& [x, est] : rep.pi_limits)
        ok &= expect(est.finite() && std::abs(est.value - std::log(x)) <= 1e-12 &&
                         est.residual <= 1e-12,
                     "exponential/log residual 0 within float");
    }
    {
      TailFunction esq([](double t) { return std::exp(std::sqrt(t)); }, std::nullopt,
                       1.0, "e^sqrt t", [](double t) { return std::sqrt(t); },
                       [](double t) { return 0.5 / std::sqrt(t); });
      PiOptions opt;
      opt.g = TailFunction([](double t) { return 2.0 * std::sqrt(t); }, std::nullopt,
                           1.0, "2 sqrt t", std::nullopt,
                           [](double t) { return 0.5 / t; });
      const auto rep = pi_functional(esq, 1.0, opt);
      for (const auto& [x, est] : rep.pi_limits)
        ok &= expect(est.finite() && std::abs(est.value - std::log(x)) <= 1e-2,
                     "exp(sqrt t) Pi limit within 1e-2");
    }
    {
      PiOptions opt;
      opt.tol = 5e-2;
      const auto rep = pi_functional(standard_normal().distribution.survival, 1.0, opt);
      ok &= expect(rep.decreasing_route, "normal goes through the decreasing route");
      for (const auto& [x, est] : rep.pi_limits)
        ok &= expect(est.finite() && std::abs(est.value + std::log(x)) <= 5e-2,
                     "normal decreasing-route -log x within 5e-2");
    }
    return ok;
  });

  // 8. EVT Monte Carlo, within 60 s.
  criterion(8, "EVT Monte Carlo", [] {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    const std::uint64_t seed = 7;
    {
      const auto d = exponential(1.0).distribution;
      const auto dom = domain_of_attraction(d);
      const auto [a, b] = normalizing_constants(d, dom, 1000);
      const double ks = ks_distance(simulate_maxima(d, dom, 1000, 2000, seed, a, b), dom);
      ok &= expect(ks <= 0.03, "exponential n=1e3 KS <= 0.03");
    }
    {
      const auto d = pareto(2.0).distribution;
      const auto dom = domain_of_attraction(d);
      const auto [a, b] = normalizing_constants(d, dom, 1000);
      const double ks = ks_distance(simulate_maxima(d, dom, 1000, 2000, seed, a, b), dom);
      ok &= expect(ks <= 0.03, "pareto(2) n=1e3 KS <= 0.03");
    }
    {
      const auto d = standard_normal().distribution;
      const auto dom = domain_of_attraction(d);
      const auto [a4, b4] = normalizing_constants(d, dom, 10000);
      const double ks4 =
          ks_distance(simulate_maxima(d, dom, 10000, 2000, seed, a4, b4), dom);
      ok &= expect(ks4 <= 0.08, "normal n=1e4 KS <= 0.08");
      const auto [a2, b2] = normalizing_constants(d, dom, 100);
      const double ks2 =
          ks_distance(simulate_maxima(d, dom, 100, 2000, seed, a2, b2), dom);
      ok &= expect(ks4 < ks2, "normal trend KS(1e4) < KS(1e2)");
    }
    ok &= expect(elapsed_since(start) <= 60.0, "runtime <= 60 s");
    return ok;
  });

  // 9. Determinism: byte-identical CSV artifacts across consecutive runs.
  criterion(9, "byte-identical CSV artifacts", [] {
    const auto dir = fs::temp_directory_path() / "tailvar_acceptance_det";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "exp.spec") << "family = exponential\nparams = lambda:1\n";
    std::ofstream(dir / "p2.spec") << "family = pareto\nparams = alpha:2\n";
    auto run_suite = [&](const std::string& sub) {
      for (const auto* spec : {"exp.spec", "p2.spec"}) {
        RunConfig cfg;
        cfg.command = Command::Report;
        cfg.spec_path = (dir / spec).string();
        cfg.out_dir = (dir / sub / spec).string();
        cfg.n = 500;
        cfg.blocks = 400;
        cfg.seed = 21;
        if (run(cfg) != 0) return false;
      }
      return true;
    };
    bool ok = expect(run_suite("a") && run_suite("b"), "pipeline runs cleanly");
    if (ok) {
      for (const auto* spec : {"exp.spec", "p2.spec"})
        for (const auto* name :
             {"evidence.csv", "representation.csv", "evt.csv", "maxima.csv"}) {
          const auto a = slurp(dir / "a" / spec / name);
          const auto b = slurp(dir / "b" / spec / name);
          ok &= expect(!a.empty() && a == b, "CSV artifact bytes match");
        }
    }
    fs::remove_all(dir);
    return ok;
  });

  // 10. First-order expansion at infinity for the normal auxiliary.
  criterion(10, "Taylor expansion check (g = 1/t scale)", [] {
    const auto d = standard_normal().distribution;
    const TailFunction g = reciprocal_hazard(d);
    auto gprime = [&](double t) { return t * g.value(t) - 1.0; };
    const double t = ProbeGrid(8.0, 2.0, 12).back();
    bool ok = true;
    for (double x : {-1.0, -0.5, -0.25, 0.25, 0.5, 1.0}) {
      const double gt = g.value(t);
      const double lhs = g.value(t + x * gt) - gt;
      const double rhs = x * gt * gprime(t);
      ok &= expect(std::abs(lhs - rhs) / std::abs(rhs) <= 0.05,
                   "relative error <= 5% at the largest probe");
    }
    return ok;
  });

  std::printf("%d of 10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
