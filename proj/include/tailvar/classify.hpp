#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tailvar/hazard.hpp"
#include "tailvar/limits.hpp"
#include "tailvar/quadrature.hpp"
#include "tailvar/tail_class.hpp"

// Limit-based membership tests for slow/regular/rapid variation, fused into
// a single classification by the hazard-rate trichotomy: the sign and
// finiteness of lim t f'(t)/f(t) splits the world, and the Gamma classes
// are certified through a self-neglecting auxiliary plus the ratio limits
// f(t + x g(t))/f(t) -> e^{alpha x}.

namespace tailvar {

struct ClassifyOptions {
  ProbeGrid grid = ProbeGrid::standard();
  LimitOptions limit{};
  double rho_zero_band = 1e-2;     // |rho_hat| below: Slow rather than Regular
  double slow_ratio_tol = 2e-2;    // corroboration f(tx)/f(t) -> 1
  double sn_zero_tol = 1e-2;       // g(t)/t -> 0
  double sn_ratio_tol = 2e-2;      // g(t+xg(t))/g(t) -> 1
  double sn_raw_residual_tol = 0.1;  // raw ratio deviation at the largest probe
  double gamma_ratio_rel_tol = 5e-2;  // per-x limit vs e^{alpha x}
  double gamma_consistency_tol = 5e-2;
  double potter_eps = 0.1;
  std::vector<double> xs_gamma = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
  std::vector<double> xs_rv = {0.5, 1.0, 2.0, 4.0};
  std::vector<double> xs_potter = {1.0, 2.0, 4.0, 8.0};
};

// log[f(t+delta)/f(t)] as the integral of f'/f over the increment. Direct
// log differencing breaks down once |log f| outgrows the increment (ulp of
// log f exceeds it); the integral form only ever sees f'/f. Below grid
// resolution the midpoint value is exact to O((delta/t)^2).
inline double log_increment(const TailFunction& f, double t, double delta) {
  if (delta == 0.0) return 0.0;
  double a = t, b = t + delta, sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  if (a < f.lower_bound())
    throw domain_error("log_increment: interval leaves the domain of " + f.label());
  if (std::abs(delta) <= 1e-6 * std::max(std::abs(t), 1.0))
    return f.dlog_value(a + 0.5 * std::abs(delta)) * delta;
  QuadratureOptions q;
  q.rel_tol = 1e-10;
  q.max_panels = 400;
  auto dl = [&f](double z) { return f.dlog_value(z); };
  return sign * integrate(dl, a, b, q);
}

// -------------------------------------------------------------------------
// von Mises index: lim t f'(t)/f(t). Finite values support regular (or, at
// zero, slow) variation; divergence signals rapid variation.
inline LimitEstimate von_mises_index(const TailFunction& f,
                                     const ClassifyOptions& opt = {}) {
  const ProbeGrid g = grid_for(f, opt.grid);
  return estimate_limit([&f](double t) { return t * f.dlog_value(t); }, g, opt.limit);
}

// -------------------------------------------------------------------------
// Self-neglecting check: g(t)/t -> 0 and g(t + x g(t))/g(t) -> 1 for the
// whole x grid.
struct SelfNeglectReport {
  bool passed = false;
  double ratio_residual = std::numeric_limits<double>::quiet_NaN();
  LimitEstimate gt_over_t;
  FamilyEstimate ratios;
  int skipped = 0;  // probes with t + x g(t) below the domain
};

namespace detail {

// Trailing part of the grid on which `ok` holds at every point; probes in
// the skipped prefix are counted. Returns nullopt when fewer than 8 valid
// trailing points remain.
template <class Pred>
inline std::optional<ProbeGrid> trailing_grid(const ProbeGrid& grid, Pred&& ok,
                                              int& skipped) {
  const auto pts = grid.points();
  int first = static_cast<int>(pts.size());
  for (int i = static_cast<int>(pts.size()) - 1; i >= 0; --i) {
    bool good;
    try {
      good = ok(pts[static_cast<std::size_t>(i)]);
    } catch (const std::exception&) {
      good = false;
    }
    if (!good) break;
    first = i;
  }
  skipped += first;
  const int remain = static_cast<int>(pts.size()) - first;
  if (remain < 8) return std::nullopt;
  return ProbeGrid(pts[static_cast<std::size_t>(first)], grid.ratio, remain);
}

}  // namespace detail

inline SelfNeglectReport check_self_neglecting(const TailFunction& g,
                                               const std::vector<double>& xs,
                                               const ClassifyOptions& opt = {}) {
  SelfNeglectReport rep;
  const ProbeGrid grid = grid_for(g, opt.grid);
  rep.gt_over_t =
      estimate_limit([&g](double t) { return g.value(t) / t; }, grid, opt.limit);

  auto shifted_ok = [&g](double t, double x) {
    return t + x * g.value(t) >= g.lower_bound();
  };
  auto ratio_at = [&g](double t, double x) {
    return std::exp(g.log_value(t + x * g.value(t)) - g.log_value(t));
  };
  for (double x : xs) {
    auto sub = detail::trailing_grid(
        grid, [&](double t) { return shifted_ok(t, x); }, rep.skipped);
    if (!sub) {
      LimitEstimate miss;
      miss.grid = grid;
      miss.diagnostic = "probes with t + x g(t) inside the domain are too few";
      rep.ratios.per_x.emplace_back(x, std::move(miss));
      continue;
    }
    auto est = estimate_limit([&](double t) { return ratio_at(t, x); }, *sub, opt.limit);
    if (std::isfinite(est.residual))
      rep.ratios.max_residual = std::max(rep.ratios.max_residual, est.residual);
    rep.ratios.per_x.emplace_back(x, std::move(est));
  }

  // raw deviation from 1 at the largest evaluable probe
  double worst = 0.0;
  bool have = false;
  const auto pts = grid.points();
  for (double x : xs) {
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
      try {
        if (!shifted_ok(*it, x)) continue;
        worst = std::max(worst, std::abs(ratio_at(*it, x) - 1.0));
        have = true;
        break;
      } catch (const std::exception&) {
        continue;
      }
    }
  }
  rep.ratio_residual = have ? worst : std::numeric_limits<double>::quiet_NaN();

  bool ratios_ok = !rep.ratios.per_x.empty();
  for (const auto& [x, est] : rep.ratios.per_x)
    ratios_ok = ratios_ok && est.finite_near(1.0, opt.sn_ratio_tol);
  rep.passed = rep.gt_over_t.finite_near(0.0, opt.sn_zero_tol) && ratios_ok &&
               have && rep.ratio_residual <= opt.sn_raw_residual_tol;
  return rep;
}

// -------------------------------------------------------------------------
// Gamma index: lim g(t) f'(t)/f(t). Together with a self-neglecting g this
// certifies f in Gamma_alpha(g).
inline LimitEstimate gamma_index(const TailFunction& f, const TailFunction& g,
                                 const ClassifyOptions& opt = {}) {
  ProbeGrid grid = grid_for(f, opt.grid);
  grid = grid_for(g, grid);
  return estimate_limit(
      [&f, &g](double t) { return g.value(t) * f.dlog_value(t); }, grid, opt.limit);
}

// Per-x limits of f(t + x g(t))/f(t), plus a consistency statistic against
// the gamma index estimate: max over x of |log(limit)/x - alpha_hat|.
struct GammaRatioReport {
  std::vector<std::pair<double, LimitEstimate>> per_x;
  double alpha_hat = std::numeric_limits<double>::quiet_NaN();
  double consistency = std::numeric_limits<double>::quiet_NaN();
};

inline GammaRatioReport gamma_ratio_check(const TailFunction& f, const TailFunction& g,
                                          const std::vector<double>& xs,
                                          const ClassifyOptions& opt = {}) {
  GammaRatioReport rep;
  ProbeGrid grid = grid_for(f, opt.grid);
  grid = grid_for(g, grid);
  auto ratio_at = [&f, &g](double t, double x) {
    return std::exp(log_increment(f, t, x * g.value(t)));
  };
  int skipped = 0;
  for (double x : xs) {
    auto sub = detail::trailing_grid(
        grid,
        [&](double t) { return t + x * g.value(t) >= f.lower_bound(); }, skipped);
    if (!sub) {
      LimitEstimate miss;
      miss.grid = grid;
      miss.diagnostic = "probes with t + x g(t) inside the domain are too few";
      rep.per_x.emplace_back(x, std::move(miss));
      continue;
    }
    rep.per_x.emplace_back(
        x, estimate_limit([&](double t) { return ratio_at(t, x); }, *sub, opt.limit));
  }

  const auto gi = gamma_index(f, g, opt);
  if (gi.finite()) {
    rep.alpha_hat = gi.value;
    double worst = 0.0;
    for (const auto& [x, est] : rep.per_x) {
      if (!est.finite() || !(est.value > 0.0)) {
        worst = std::numeric_limits<double>::quiet_NaN();
        break;
      }
      worst = std::max(worst, std::abs(std::log(est.value) / x - rep.alpha_hat));
    }
    rep.consistency = worst;
  }
  return rep;
}

// -------------------------------------------------------------------------
// Rapid variation in the sense of de Haan: f(tx)/f(t) degenerates to 0/inf
// on opposite sides of x = 1.
enum class DeHaanVerdict { RapidMinus, RapidPlus, NotRapid, Undetermined };

inline const char* to_string(DeHaanVerdict v) {
  switch (v) {
    case DeHaanVerdict::RapidMinus: return "RapidDeHaan(-inf)";
    case DeHaanVerdict::RapidPlus: return "RapidDeHaan(+inf)";
    case DeHaanVerdict::NotRapid: return "NotRapid";
    default: return "Undetermined";
  }
}

// per_x carries estimates of log[f(tx)/f(t)]: the log scale survives the
// violent over/underflow of the ratios themselves, and the verdicts map
// one-to-one (log -> +-inf <=> ratio -> inf/0, log -> L <=> ratio -> e^L).
struct DeHaanReport {
  DeHaanVerdict verdict = DeHaanVerdict::Undetermined;
  std::vector<std::pair<double, LimitEstimate>> per_x;
};

inline DeHaanReport dehaan_rapid_check(const TailFunction& f,
                                       const std::vector<double>& xs,
                                       const ClassifyOptions& opt = {}) {
  DeHaanReport rep;
  double x_min = 1.0;
  bool below = false, above = false;
  for (double x : xs) {
    x_min = std::min(x_min, x);
    below = below || x < 1.0;
    above = above || x > 1.0;
  }
  if (!below || !above)
    throw domain_error("dehaan_rapid_check: xs must straddle 1 (and exclude it)");
  const ProbeGrid grid = grid_for(f, opt.grid, x_min);
  auto fam = estimate_limit_family(
      [&f](double t, double x) { return f.log_value(t * x) - f.log_value(t); },
      xs, grid, opt.limit);
  rep.per_x = std::move(fam.per_x);

  enum Kind { Zero, Inf, FiniteNonzero, Unknown };
  auto kind_of = [&](const LimitEstimate& e) {
    if (e.verdict == LimitVerdict::PlusInfinity) return Inf;
    if (e.verdict == LimitVerdict::MinusInfinity) return Zero;
    if (e.finite()) return FiniteNonzero;
    return Unknown;
  };
  bool minus_pat = true, plus_pat = true, any_fin = false, any_unknown = false;
  for (const auto& [x, est] : rep.per_x) {
    const Kind k = kind_of(est);
    if (k == FiniteNonzero) any_fin = true;
    if (k == Unknown) any_unknown = true;
    if (x < 1.0) {
      minus_pat = minus_pat && k == Inf;
      plus_pat = plus_pat && k == Zero;
    } else {
      minus_pat = minus_pat && k == Zero;
      plus_pat = plus_pat && k == Inf;
    }
  }
  if (minus_pat)
    rep.verdict = DeHaanVerdict::RapidMinus;
  else if (plus_pat)
    rep.verdict = DeHaanVerdict::RapidPlus;
  else if (any_fin && !any_unknown)
    rep.verdict = DeHaanVerdict::NotRapid;
  else
    rep.verdict = DeHaanVerdict::Undetermined;
  return rep;
}

// -------------------------------------------------------------------------
// Karamata ratios: head  t f(t) / int_{t0}^t f -> rho + 1,
//                  tail  t f(t) / int_t^inf  f -> -rho - 1.
enum class KaramataSide { Head, Tail };

inline LimitEstimate karamata_ratio(const TailFunction& f, KaramataSide side,
                                    const ClassifyOptions& opt = {}) {
  const ProbeGrid grid = grid_for(f, opt.grid);
  const double t0 = f.lower_bound();
  auto safe_value = [&f](double x) {
    try {
      return f.value(x);
    } catch (const domain_error&) {
      return 0.0;  // underflowed far tail contributes nothing
    }
  };
  if (side == KaramataSide::Head) {
    return estimate_limit(
        [&](double t) { return t * f.value(t) / integrate(safe_value, t0, t); },
        grid, opt.limit);
  }
  // Divergence probe: a convergent tail is insensitive to where the
  // integrator's range cap sits; a power-law-divergent one keeps gaining
  // mass all the way up, so two caps ~e^90 apart disagree loudly.
  {
    const double full = tail_integral_log(safe_value, grid.start);
    const double shorter = tail_integral_log(safe_value, grid.start, {}, 90.0);
    if (!(std::abs(full - shorter) <= 0.05 * std::abs(full)))
      throw tail_integral_error("tail integral divergent or too heavy");
  }
  return estimate_limit(
      [&](double t) { return t * f.value(t) / tail_integral_log(safe_value, t); },
      grid, opt.limit);
}

// -------------------------------------------------------------------------
// Potter bounds: (1-eps) x^(rho-eps) < f(tx)/f(t) < (1+eps) x^(rho+eps) for
// every probe beyond an automatically located t0.
struct PotterReport {
  bool passed = false;
  double located_t0 = std::numeric_limits<double>::quiet_NaN();
  explicit operator bool() const { return passed; }
};

inline PotterReport potter_check(const TailFunction& f, double rho, double eps,
                                 const std::vector<double>& xs,
                                 const ClassifyOptions& opt = {}) {
  PotterReport rep;
  const ProbeGrid grid = grid_for(f, opt.grid);
  const auto pts = grid.points();
  auto ok_at = [&](double t) {
    for (double x : xs) {
      if (x < 1.0) return false;
      double r;
      try {
        r = f.ratio(t * x, t);
      } catch (const std::exception&) {
        return false;
      }
      const double lo = (1.0 - eps) * std::pow(x, rho - eps);
      const double hi = (1.0 + eps) * std::pow(x, rho + eps);
      if (!(lo < r && r < hi)) return false;
    }
    return true;
  };
  int first_ok = -1;
  for (int i = static_cast<int>(pts.size()) - 1; i >= 0; --i) {
    if (!ok_at(pts[static_cast<std::size_t>(i)])) break;
    first_ok = i;
  }
  if (first_ok >= 0 && static_cast<int>(pts.size()) - first_ok >= 4) {
    rep.passed = true;
    rep.located_t0 = pts[static_cast<std::size_t>(first_ok)];
  }
  return rep;
}

// -------------------------------------------------------------------------
// Full classification.

namespace detail {

inline TailFunction scale_function(const TailFunction& g, double c) {
  if (std::abs(c - 1.0) < 1e-9) return g;
  auto eval = [g, c](double t) { return c * g.value(t); };
  auto log_eval = [g, c](double t) { return std::log(c) + g.log_value(t); };
  auto dlog = [g](double t) { return g.dlog_value(t); };
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g*", c);
  return TailFunction(eval, std::nullopt, g.lower_bound(), buf + g.label(),
                      log_eval, dlog);
}

// g = |f/f'| restricted past the last sign change of f' on the grid. A sign
// change surviving into the upper half of the grid breaks the "ultimately
// monotone" hypothesis, in which case no auxiliary is constructed.
inline std::optional<TailFunction> reciprocal_hazard_of(const TailFunction& f,
                                                        const ProbeGrid& grid) {
  const auto pts = grid.points();
  int last_change = -1;
  int prev_sign = 0;
  int usable = 0;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    double d;
    try {
      d = f.dlog_value(pts[static_cast<std::size_t>(i)]);
    } catch (const std::exception&) {
      break;
    }
    if (!std::isfinite(d)) break;
    usable = i + 1;
    const int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
    if (s != 0) {
      if (prev_sign != 0 && s != prev_sign) last_change = i;
      prev_sign = s;
    }
  }
  if (usable < 8) return std::nullopt;
  if (last_change >= usable / 2) return std::nullopt;
  const double t0 =
      last_change < 0 ? f.lower_bound() : pts[static_cast<std::size_t>(last_change + 1)];
  auto eval = [f](double t) { return 1.0 / std::abs(f.dlog_value(t)); };
  auto log_eval = [f](double t) { return -std::log(std::abs(f.dlog_value(t))); };
  return TailFunction(eval, std::nullopt, std::max(t0, f.lower_bound()),
                      "|" + f.label() + "/d(" + f.label() + ")|", log_eval);
}

}  // namespace detail

// Decision procedure:
//   1. von Mises index Finite(0) -> Slow (corroborated by f(tx)/f(t) -> 1);
//      Finite(rho != 0) -> Regular(rho) (corroborated by Potter bounds).
//   2. Diverging (or undetermined) index -> Gamma route with g_hint or the
//      constructed g = |f/f'|: self-neglect + gamma index + ratio limits,
//      normalized to alpha = +-1 with g/|alpha_hat|.
//   3. Otherwise the de Haan ratio pattern alone -> RapidDeHaan(sign).
//   4. Undetermined, with all collected evidence.
inline TailClass classify_tail(const TailFunction& f,
                               std::optional<TailFunction> g_hint = {},
                               const ClassifyOptions& opt = {}) {
  TailClass out;
  auto& ev = out.evidence;
  const LimitEstimate vm = von_mises_index(f, opt);
  ev.emplace_back("von_mises", vm);

  if (vm.finite()) {
    const double rho = vm.value;
    if (std::abs(rho) <= opt.rho_zero_band) {
      const ProbeGrid grid = grid_for(f, opt.grid, 0.5);
      auto fam = estimate_limit_family(
          [&f](double t, double x) { return f.ratio(t * x, t); },
          {0.5, 2.0}, grid, opt.limit);
      bool ok = true;
      for (auto& [x, est] : fam.per_x) {
        ev.emplace_back("slow_ratio@x=" + std::to_string(x), est);
        ok = ok && est.finite_near(1.0, opt.slow_ratio_tol);
      }
      if (ok) {
        out.kind = TailKind::Slow;
        out.index = 0.0;
        out.notes.push_back("von Mises index inside the zero band; ratios -> 1");
        return out;
      }
      out.notes.push_back("index near zero but f(tx)/f(t) does not settle at 1");
      return out;
    }
    const PotterReport pot = potter_check(f, rho, opt.potter_eps, opt.xs_potter, opt);
    out.notes.push_back(std::string("potter(eps=0.1): ") +
                        (pot.passed ? "pass" : "fail"));
    if (pot.passed) {
      out.kind = TailKind::Regular;
      out.index = rho;
      return out;
    }
    out.notes.push_back("finite index but Potter envelope violated");
    return out;
  }

  // Gamma route. Also entered on an undetermined index: hazards diverging
  // slower than any power (e.g. t h(t) ~ log t) never cross the divergence
  // threshold on a feasible grid, yet the Gamma certificate is decisive on
  // its own.
  std::vector<TailFunction> candidates;
  if (g_hint) candidates.push_back(*g_hint);
  if (auto g = detail::reciprocal_hazard_of(f, grid_for(f, opt.grid)))
    candidates.push_back(*g);
  else if (!g_hint)
    out.notes.push_back("f'/f changes sign across the grid; no auxiliary built");

  for (const auto& g : candidates) {
    SelfNeglectReport sn = check_self_neglecting(g, opt.xs_gamma, opt);
    ev.emplace_back("self_neglect[g/t] g=" + g.label(), sn.gt_over_t);
    if (!sn.passed) {
      out.notes.push_back("self-neglect failed for g = " + g.label());
      continue;
    }
    const LimitEstimate gi = gamma_index(f, g, opt);
    ev.emplace_back("gamma_index g=" + g.label(), gi);
    if (!gi.finite() || std::abs(gi.value) < 0.1) {
      out.notes.push_back("gamma index not usable for g = " + g.label());
      continue;
    }
    GammaRatioReport gr = gamma_ratio_check(f, g, opt.xs_gamma, opt);
    int pos = 0, neg = 0;
    for (auto& [x, est] : gr.per_x) {
      ev.emplace_back("gamma_ratio@x=" + std::to_string(x), est);
      const double target = std::exp(gi.value * x);
      if (est.finite() &&
          std::abs(est.value - target) <= opt.gamma_ratio_rel_tol * target)
        (x > 0 ? pos : neg)++;
    }
    const bool consistent =
        std::isfinite(gr.consistency) && gr.consistency <= opt.gamma_consistency_tol;
    if (pos >= 3 && neg >= 3 && consistent) {
      const double a = gi.value;
      out.kind = TailKind::GammaClass;
      out.index = a > 0 ? 1.0 : -1.0;
      out.aux = detail::scale_function(g, 1.0 / std::abs(a));
      return out;
    }
    out.notes.push_back("gamma ratio limits inconsistent for g = " + g.label());
  }

  std::vector<double> xs_dehaan;
  for (double x : opt.xs_rv)
    if (x != 1.0) xs_dehaan.push_back(x);
  DeHaanReport dh = dehaan_rapid_check(f, xs_dehaan, opt);
  for (auto& [x, est] : dh.per_x)
    ev.emplace_back("dehaan_log_ratio@x=" + std::to_string(x), est);
  if (dh.verdict == DeHaanVerdict::RapidMinus) {
    out.kind = TailKind::RapidDeHaan;
    out.index = -std::numeric_limits<double>::infinity();
    return out;
  }
  if (dh.verdict == DeHaanVerdict::RapidPlus) {
    out.kind = TailKind::RapidDeHaan;
    out.index = std::numeric_limits<double>::infinity();
    return out;
  }
  out.notes.push_back("no membership test produced a determinate verdict");
  return out;
}

}  // namespace tailvar
