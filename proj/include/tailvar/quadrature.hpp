#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "tailvar/errors.hpp"

namespace tailvar {

namespace detail {

// Gauss(7)/Kronrod(15) nodes and weights on [-1, 1].
struct GK15 {
  static constexpr double nodes[8] = {
      0.000000000000000, 0.405845151377397, 0.741531185599394, 0.949107912342759,
      0.207784955007898, 0.586087235467691, 0.864864423359769, 0.991455371120813};
  static constexpr double wg[8] = {
      0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870,
      0.0, 0.0, 0.0, 0.0};
  static constexpr double wk[8] = {
      0.209482141084728, 0.190350578064785, 0.140653259715525, 0.063092092629979,
      0.204432940075298, 0.169004726639267, 0.104790010322250, 0.022935322010529};
};

template <class F>
inline void gk15_panel(const F& f, double a, double b, double& value, double& err,
                       double& resabs) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double g7 = GK15::wg[0] * f0;
  double k15 = GK15::wk[0] * f0;
  double rabs = GK15::wk[0] * std::abs(f0);
  for (int i = 1; i < 8; ++i) {
    const double dx = half * GK15::nodes[i];
    const double fp = f(mid + dx), fm = f(mid - dx);
    g7 += GK15::wg[i] * (fp + fm);
    k15 += GK15::wk[i] * (fp + fm);
    rabs += GK15::wk[i] * (std::abs(fp) + std::abs(fm));
  }
  g7 *= half;
  k15 *= half;
  value = k15;
  resabs = rabs * half;
  const double diff = std::abs(k15 - g7);
  err = diff * std::sqrt(std::max(diff * 200.0, 0.0));
  if (!std::isfinite(err)) err = diff * 200.0;
  err = std::max(err, diff);
  // error indistinguishable from roundoff: the panel is converged
  if (err <= 100.0 * std::numeric_limits<double>::epsilon() * resabs) err = 0.0;
}

struct Panel {
  double a, b, value, err, resabs;
  bool operator<(const Panel& o) const { return err < o.err; }
};

}  // namespace detail

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_floor = 1e-300;  // stop on relative stabilization, never on exact zero
  double abs_tol = 0.0;       // caller-known noise floor (e.g. exponent scales)
  int max_panels = 4000;
};

// Globally adaptive Gauss-Kronrod integration over a finite interval,
// starting from a caller-provided panelization. Throws tail_integral_error
// when the panel budget is exhausted with the error still above tolerance.
template <class F>
double integrate_panels(const F& f, const std::vector<double>& cuts,
                        const QuadratureOptions& opt = {}) {
  std::priority_queue<detail::Panel> heap;
  double total = 0.0, total_err = 0.0, total_resabs = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    detail::Panel p{cuts[i], cuts[i + 1], 0.0, 0.0, 0.0};
    detail::gk15_panel(f, p.a, p.b, p.value, p.err, p.resabs);
    total += p.value;
    total_err += p.err;
    total_resabs += p.resabs;
    heap.push(p);
  }
  int used = static_cast<int>(cuts.size()) - 1;
  const double min_width = 1e-15;
  auto target = [&] {
    // roundoff floor of the |f| mass: beyond it refinement only churns noise
    return std::max({opt.rel_tol * std::abs(total),
                     100.0 * std::numeric_limits<double>::epsilon() * total_resabs,
                     opt.abs_floor, opt.abs_tol});
  };
  while (total_err > target() && used < opt.max_panels) {
    detail::Panel worst = heap.top();
    heap.pop();
    if (worst.b - worst.a <=
        min_width * (std::abs(worst.a) + std::abs(worst.b) + 1e-300)) {
      // cannot split further in double precision; accept as is
      if (heap.empty() || heap.top().err <= 0.0) break;
      detail::Panel sunk = worst;
      sunk.err = 0.0;
      heap.push(sunk);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    detail::Panel left{worst.a, mid, 0.0, 0.0, 0.0}, right{mid, worst.b, 0.0, 0.0, 0.0};
    detail::gk15_panel(f, left.a, left.b, left.value, left.err, left.resabs);
    detail::gk15_panel(f, right.a, right.b, right.value, right.err, right.resabs);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    total_resabs += left.resabs + right.resabs - worst.resabs;
    total_err = std::max(total_err, 0.0);
    heap.push(left);
    heap.push(right);
    ++used;
  }
  if (used >= opt.max_panels && total_err > 100.0 * target())
    throw tail_integral_error("tail integral divergent or too heavy");
  return total;
}

// Integral over [a, b]. Initial panels are log-spaced whenever the interval
// spans more than a decade: with a handful of linear panels, integrands
// whose mass hugs the left end would fall between the quadrature nodes and
// the error estimate would never notice.
template <class F>
double integrate(const F& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts;
  if (a > 0.0 && b / a > 16.0) {
    cuts.push_back(a);
    for (double c = a * 16.0; c < b; c *= 16.0) cuts.push_back(c);
    cuts.push_back(b);
  } else if (a <= 0.0 && b - a > 64.0) {
    cuts.push_back(a);
    for (double c = a + 1.0; c < b; c = a + (c - a) * 16.0) cuts.push_back(c);
    cuts.push_back(b);
  } else {
    const int n0 = 8;
    for (int i = 0; i <= n0; ++i)
      cuts.push_back(a + (b - a) * static_cast<double>(i) / n0);
  }
  return integrate_panels(f, cuts, opt);
}

// int_t^inf f(x) dx via the compactifying substitution x = t + s/(1-s),
// s in [0,1). Suited to tails that decay at least like an integrable power.
template <class F>
double tail_integral(const F& f, double t, const QuadratureOptions& opt = {}) {
  const double s_cap = 1.0 - 1e-300;  // x caps near 1e300
  auto g = [&](double s) {
    const double u = 1.0 - s;
    const double x = t + s / u;
    if (!std::isfinite(x)) return 0.0;
    const double v = f(x) / (u * u);
    return std::isfinite(v) ? v : 0.0;
  };
  std::vector<double> cuts{0.0, 0.5, 0.75, 0.9, 0.99, 0.999, s_cap};
  return integrate_panels(g, cuts, opt);
}

// int_t^inf f(x) dx via x = t * exp(s/(1-s)). The multiplicative stretch
// resolves slowly decaying integrands (e.g. 1/(x log^2 x)) that the linear
// substitution cannot. x is truncated at ~exp(667 - cap_shift); mass beyond
// the double range is not reachable pointwise, and comparing two cap values
// is how callers detect a divergent tail.
template <class F>
double tail_integral_log(const F& f, double t, const QuadratureOptions& opt = {},
                         double cap_shift = 0.0) {
  if (!(t > 0.0)) throw domain_error("tail_integral_log requires t > 0");
  const double exp_cap = 667.0 - cap_shift - std::log(std::max(t, 1.0));
  const double s_cap = exp_cap / (1.0 + exp_cap);
  auto g = [&](double s) {
    const double u = 1.0 - s;
    const double x = t * std::exp(s / u);
    if (!std::isfinite(x)) return 0.0;
    const double v = f(x) * x / (u * u);
    return std::isfinite(v) ? v : 0.0;
  };
  std::vector<double> cuts;
  for (int i = 0; i <= 12; ++i)
    cuts.push_back(s_cap * static_cast<double>(i) / 12.0);
  return integrate_panels(g, cuts, opt);
}

}  // namespace tailvar
