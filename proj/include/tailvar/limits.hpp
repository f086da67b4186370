#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tailvar/probe_grid.hpp"

namespace tailvar {

enum class LimitVerdict { Finite, PlusInfinity, MinusInfinity, Undetermined };

inline const char* to_string(LimitVerdict v) {
  switch (v) {
    case LimitVerdict::Finite: return "Finite";
    case LimitVerdict::PlusInfinity: return "PlusInfinity";
    case LimitVerdict::MinusInfinity: return "MinusInfinity";
    default: return "Undetermined";
  }
}

// Outcome of a numerical limit at infinity. raw_tail holds the last four
// probe values, accel_tail the last four extrapolated values; residual is
// the spread of accel_tail.
struct LimitEstimate {
  LimitVerdict verdict = LimitVerdict::Undetermined;
  double value = std::numeric_limits<double>::quiet_NaN();
  std::array<double, 4> raw_tail{{0, 0, 0, 0}};
  std::array<double, 4> accel_tail{{0, 0, 0, 0}};
  double residual = std::numeric_limits<double>::quiet_NaN();
  ProbeGrid grid;
  std::string diagnostic;

  bool finite() const { return verdict == LimitVerdict::Finite; }
  bool finite_near(double target, double tol) const {
    return finite() && std::abs(value - target) <= tol;
  }
};

struct LimitOptions {
  double tol = 5e-3;          // stabilization tolerance, scaled by max(1,|value|)
  double diverge = 1e6;       // divergence threshold (with monotone growth check)
};

namespace detail {

// One Aitken delta-squared sweep. Entries whose second difference is at the
// rounding floor are carried over unchanged.
inline std::vector<double> aitken_sweep(const std::vector<double>& s) {
  std::vector<double> out(s.size() - 2);
  for (std::size_t i = 0; i + 2 < s.size(); ++i) {
    const double d1 = s[i + 1] - s[i];
    const double d2 = s[i + 2] - s[i + 1];
    const double dd = d2 - d1;
    const double scale = std::abs(s[i]) + std::abs(s[i + 1]) + std::abs(s[i + 2]);
    if (std::abs(dd) <= 100.0 * std::numeric_limits<double>::epsilon() * scale + 1e-300) {
      out[i] = s[i + 2];
      continue;
    }
    const double accel = s[i + 2] - d2 * d2 / dd;
    out[i] = std::isfinite(accel) ? accel : s[i + 2];
  }
  return out;
}

inline int count_sign_changes(const std::vector<double>& v) {
  int changes = 0;
  int prev = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double d = v[i + 1] - v[i];
    const double scale = std::abs(v[i]) + std::abs(v[i + 1]);
    int sgn = 0;
    if (std::abs(d) > 1e-14 * scale + 1e-300) sgn = d > 0 ? 1 : -1;
    if (sgn != 0) {
      if (prev != 0 && sgn != prev) ++changes;
      prev = sgn;
    }
  }
  return changes;
}

inline double tail_spread(const std::vector<double>& v) {
  double lo = v[v.size() - 4], hi = lo;
  for (std::size_t i = v.size() - 4; i < v.size(); ++i) {
    lo = std::min(lo, v[i]);
    hi = std::max(hi, v[i]);
  }
  return hi - lo;
}

}  // namespace detail

// Estimates the limit of a finite probe sequence taken on `grid`.
//
// Divergence wins first: the tail must exceed the threshold and grow
// monotonically. A probe that evaluates to NaN (or throws) truncates the
// sequence; +-inf truncates too but still counts as divergence evidence when
// the finite prefix already matches the pattern. Otherwise iterated Aitken
// extrapolation decides between Finite and Undetermined. No exception
// escapes: every failure mode is an Undetermined verdict with a diagnostic.
inline LimitEstimate estimate_sequence(std::vector<double> values,
                                       const ProbeGrid& grid, std::string trunc_note,
                                       int inf_sign, const LimitOptions& opt = {}) {
  LimitEstimate est;
  est.grid = grid;
  const std::size_t n = values.size();
  if (n >= 4)
    std::copy(values.end() - 4, values.end(), est.raw_tail.begin());
  est.diagnostic = trunc_note;

  // Divergence first: the tail must clear the threshold moving monotonically
  // outward. A prefix as short as 4 points still counts when the sequence
  // was truncated by overflow in the matching direction.
  if (n >= 4) {
    const auto& rt = est.raw_tail;
    const bool inc = rt[0] < rt[1] && rt[1] < rt[2] && rt[2] < rt[3];
    const bool dec = rt[0] > rt[1] && rt[1] > rt[2] && rt[2] > rt[3];
    const bool full = n >= 8;
    if (rt[3] >= opt.diverge && inc && (full || inf_sign > 0)) {
      est.verdict = LimitVerdict::PlusInfinity;
      est.value = std::numeric_limits<double>::infinity();
      return est;
    }
    if (rt[3] <= -opt.diverge && dec && (full || inf_sign < 0)) {
      est.verdict = LimitVerdict::MinusInfinity;
      est.value = -std::numeric_limits<double>::infinity();
      return est;
    }
  }
  if (n < 8) {
    est.diagnostic = trunc_note.empty()
                         ? "fewer than 8 evaluable probes"
                         : "fewer than 8 evaluable probes (" + trunc_note + ")";
    return est;
  }
  if (inf_sign != 0) {
    est.diagnostic = "non-finite probe value without a divergence pattern";
    return est;
  }

  // oscillation: alternating differences across the tail half, with an
  // amplitude that actually matters at the requested tolerance
  {
    std::vector<double> tail(values.begin() + static_cast<long>(n / 2), values.end());
    double lo = tail.front(), hi = tail.front();
    for (double v : tail) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const bool significant =
        hi - lo > opt.tol * std::max(1.0, std::abs(tail.back()));
    const int diffs = static_cast<int>(tail.size()) - 1;
    if (significant && diffs >= 2 && detail::count_sign_changes(tail) * 2 >= diffs) {
      est.diagnostic = "oscillating differences over the probe tail";
      return est;
    }
  }

  // Steadily growing differences mean the sequence is drifting off without
  // having crossed the divergence threshold. Aitken would formally "sum"
  // such geometric growth to its fixed point, so it must be vetoed here.
  {
    std::size_t grow = 0, pairs = 0;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = n / 2; i + 1 < n; ++i) {
      const double d = std::abs(values[i + 1] - values[i]);
      if (!std::isnan(prev)) {
        ++pairs;
        if (d > prev * (1.0 + 1e-9) + 1e-300) ++grow;
      }
      prev = d;
    }
    const double last_d = std::abs(values[n - 1] - values[n - 2]);
    if (pairs >= 3 && grow * 5 >= pairs * 4 &&
        last_d > opt.tol * std::max(1.0, std::abs(values[n - 1]))) {
      est.diagnostic = "differences grow without crossing the divergence threshold";
      return est;
    }
  }

  // Iterated Aitken with adaptive depth: sweep while the tail spread
  // improves decisively, stopping at the floating-point noise plateau.
  // Deep tableaux on slowly converging sequences amplify rounding noise,
  // so exhausting the levels is worse than stopping near the best one.
  std::vector<std::vector<double>> levels;
  levels.push_back(values);
  double spread = detail::tail_spread(levels.back());
  while (levels.back().size() >= 8) {
    std::vector<double> next = detail::aitken_sweep(levels.back());
    const double next_spread = detail::tail_spread(next);
    if (!(spread > 0.0) || !(next_spread <= 0.7 * spread)) break;
    levels.push_back(std::move(next));
    spread = next_spread;
  }

  // A level is acceptable when its tail spread is inside the tolerance band
  // and its |differences| are nonincreasing in at least 2 of the last 3
  // steps (differences at the rounding floor count as ties). Use the
  // deepest acceptable level; report the deepest level either way.
  auto level_stats = [](const std::vector<double>& level, double tol) {
    const std::size_t m = level.size();
    const double value = level.back();
    const double res = detail::tail_spread(level);
    const double floor = 1e-12 * std::max(1.0, std::abs(value));
    int nonincreasing = 0;
    for (int i = 0; i < 3; ++i) {
      const double da = std::abs(level[m - 4 + static_cast<std::size_t>(i)] -
                                 level[m - 5 + static_cast<std::size_t>(i)]);
      const double db = std::abs(level[m - 3 + static_cast<std::size_t>(i)] -
                                 level[m - 4 + static_cast<std::size_t>(i)]);
      if (db <= da * (1.0 + 1e-9) + floor) ++nonincreasing;
    }
    const bool ok = res <= tol * std::max(1.0, std::abs(value)) && nonincreasing >= 2;
    return std::pair<bool, double>(ok, res);
  };

  const std::vector<double>* chosen = nullptr;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    if (level_stats(*it, opt.tol).first) {
      chosen = &*it;
      break;
    }
  }
  const std::vector<double>& shown = chosen ? *chosen : levels.back();
  std::copy(shown.end() - 4, shown.end(), est.accel_tail.begin());
  est.residual = detail::tail_spread(shown);
  if (chosen) {
    est.verdict = LimitVerdict::Finite;
    est.value = shown.back();
  } else {
    est.diagnostic = "extrapolation did not stabilize (residual " +
                     std::to_string(est.residual) + ")";
  }
  return est;
}

template <class F>
LimitEstimate estimate_limit(F&& f, const ProbeGrid& grid, const LimitOptions& opt = {}) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(grid.count));
  std::string note;
  int inf_sign = 0;
  double t = grid.start;
  for (int k = 0; k < grid.count; ++k, t *= grid.ratio) {
    double v;
    try {
      v = f(t);
    } catch (const std::exception& e) {
      note = "probe at t = " + std::to_string(t) + " failed: " + e.what();
      break;
    }
    if (std::isnan(v)) {
      note = "NaN probe value at t = " + std::to_string(t);
      break;
    }
    if (std::isinf(v)) {
      inf_sign = v > 0 ? 1 : -1;
      note = "probe overflow at t = " + std::to_string(t);
      break;
    }
    values.push_back(v);
  }
  return estimate_sequence(std::move(values), grid, std::move(note), inf_sign, opt);
}

// Convenience overload with an explicit tolerance (spec signature).
template <class F>
LimitEstimate estimate_limit(F&& f, const ProbeGrid& grid, double tol_limit) {
  LimitOptions opt;
  opt.tol = tol_limit;
  return estimate_limit(std::forward<F>(f), grid, opt);
}

// Family of limits f(t, x) over a list of x values, plus a uniformity
// diagnostic (the worst per-x residual).
struct FamilyEstimate {
  std::vector<std::pair<double, LimitEstimate>> per_x;
  double max_residual = 0.0;

  bool all_finite_near(double (*target)(double), double tol) const {
    for (const auto& [x, est] : per_x)
      if (!est.finite_near(target(x), tol)) return false;
    return !per_x.empty();
  }
};

template <class F>
FamilyEstimate estimate_limit_family(F&& f, const std::vector<double>& xs,
                                     const ProbeGrid& grid, const LimitOptions& opt = {}) {
  FamilyEstimate fam;
  for (double x : xs) {
    auto est = estimate_limit([&](double t) { return f(t, x); }, grid, opt);
    if (std::isfinite(est.residual))
      fam.max_residual = std::max(fam.max_residual, est.residual);
    fam.per_x.emplace_back(x, std::move(est));
  }
  return fam;
}

}  // namespace tailvar
