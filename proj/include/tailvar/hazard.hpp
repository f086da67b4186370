#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "tailvar/distribution.hpp"
#include "tailvar/quadrature.hpp"

// Hazard-rate machinery: hazard h, reciprocal hazard g = 1/h, cumulative
// hazard H = int 1/g, its inverse, and the total hazard construction
// Psi = g o H^-1.

namespace tailvar {

// h(t) = density(t)/survival(t), assembled in log scale so it stays exact
// where both factors underflow. When the survival carries an analytic
// log-derivative, h = -dlog(survival) is used instead: the log-quotient form
// cancels catastrophically once |log survival| outgrows the quotient itself
// (e.g. the normal survival at t ~ 1e8, where log values reach ~1e16).
inline TailFunction hazard_rate(const Distribution& d) {
  if (!d.has_density())
    throw domain_error("hazard_rate: distribution '" + d.label + "' has no density");
  const TailFunction f = *d.density;
  const TailFunction s = d.survival;
  const double t0 = std::max(f.lower_bound(), s.lower_bound());
  bool use_dlog = s.has_dlog_channel();
  if (use_dlog) {
    // the density must actually be -survival'
    const double probes[] = {t0, t0 * 2.0 + 1.0};
    for (double t : probes) {
      const double a = -s.dlog_value(t);
      const double b = std::exp(f.log_value(t) - s.log_value(t));
      if (!(std::abs(a - b) <= 1e-6 * std::max(std::abs(a), std::abs(b)))) {
        use_dlog = false;
        break;
      }
    }
  }
  if (use_dlog) {
    auto eval = [s](double t) { return -s.dlog_value(t); };
    auto log_eval = [s](double t) { return std::log(-s.dlog_value(t)); };
    return TailFunction(eval, std::nullopt, t0, "hazard(" + d.label + ")", log_eval);
  }
  auto log_eval = [f, s](double t) { return f.log_value(t) - s.log_value(t); };
  auto eval = [log_eval](double t) { return std::exp(log_eval(t)); };
  auto dlog = [f, s](double t) { return f.dlog_value(t) - s.dlog_value(t); };
  return TailFunction(eval, std::nullopt, t0, "hazard(" + d.label + ")", log_eval, dlog);
}

inline TailFunction reciprocal_hazard(const Distribution& d) {
  return transform_reciprocal(hazard_rate(d));
}

// R(t) = int_t^inf survival(x) dx / survival(t), by the compactifying
// substitution x = t + s/(1-s). The survival ratio is formed inside the
// integrand (log scale), so R stays finite even where survival itself
// underflows. Divergence (e.g. Pareto alpha <= 1) surfaces as
// tail_integral_error.
inline double reciprocal_hazard_R(const Distribution& d, double t,
                                  const QuadratureOptions& opt = {}) {
  const TailFunction s = d.survival;
  if (t < s.lower_bound())
    throw domain_error("reciprocal_hazard_R: t below the survival domain");
  const double log_st = s.log_value(t);
  auto g = [&](double sv) {
    const double u = 1.0 - sv;
    const double x = t + sv / u;
    if (!std::isfinite(x)) return 0.0;
    const double v = std::exp(s.log_value(x) - log_st) / (u * u);
    return std::isfinite(v) ? v : 0.0;
  };
  std::vector<double> cuts{0.0, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0 - 1e-300};
  return integrate_panels(g, cuts, opt);
}

// int_{t0}^{t} 1/g, adaptive to relative 1e-8.
inline double cumulative_hazard(const TailFunction& g, double t0, double t,
                                const QuadratureOptions& opt = {}) {
  if (!(t >= t0)) throw domain_error("cumulative_hazard: t < t0");
  if (t0 < g.lower_bound())
    throw domain_error("cumulative_hazard: t0 below the domain of g");
  auto inv_g = [g](double z) { return std::exp(-g.log_value(z)); };
  return integrate(inv_g, t0, t, opt);
}

// Hazard view of a reciprocal hazard g: exposes h = 1/g, H, H^-1 and Psi.
// H values accumulate over fixed geometric checkpoints whose partial
// integrals are memoized; the checkpoint layout is independent of call
// order, so concurrent reads see the same values and concurrent writes are
// idempotent.
class HazardView {
 public:
  HazardView(TailFunction g, double t0)
      : g_(std::move(g)),
        h_(transform_reciprocal(g_)),
        t0_(std::max(t0, g_.lower_bound())),
        cache_(std::make_shared<Cache>()) {}

  static HazardView from_distribution(const Distribution& d) {
    TailFunction h = hazard_rate(d);
    TailFunction g = transform_reciprocal(h);
    return HazardView(std::move(g), h.lower_bound());
  }

  const TailFunction& hazard() const { return h_; }
  const TailFunction& reciprocal() const { return g_; }
  double t0() const { return t0_; }

  double H(double t) const {
    if (!(t >= t0_)) throw domain_error("HazardView::H: t < t0");
    if (t == t0_) return 0.0;
    // sum cached checkpoint panels [c_j, c_{j+1}], c_j = t0 * 2^j, then the
    // remainder up to t
    double acc = 0.0;
    double lo = t0_;
    const double base = std::max(t0_, 1e-3);
    double c = base * 2.0;
    if (t0_ <= 0.0) {
      // left-anchored first checkpoint when t0 = 0
      c = 1.0;
    }
    int j = 0;
    while (c <= t) {
      acc += panel(j, lo, c);
      lo = c;
      c *= 2.0;
      ++j;
    }
    if (t > lo) acc += segment(lo, t);
    return acc;
  }

  // Smallest t with H(t) = y, to relative 1e-8. The upper bracket doubles
  // from max(2*t0, 1) and is capped at 1e300; an unreachable y means H is
  // bounded on the representable range.
  double H_inverse(double y) const {
    if (y < 0.0) throw domain_error("H_inverse: negative level");
    if (y == 0.0) return t0_;
    double lo = t0_;
    double hi = std::max(t0_ * 2.0, 1.0);
    if (hi <= lo) hi = lo * 2.0;
    while (H(hi) < y) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) throw saturation_error("cumulative hazard saturates");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-8 * hi; ++i) {
      const double mid = (lo > 0.0 && hi / lo > 4.0) ? std::sqrt(lo * hi)
                                                     : 0.5 * (lo + hi);
      (H(mid) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  // Psi(t) = g(H^-1(t)).
  double psi(double t) const { return g_.value(H_inverse(t)); }

 private:
  struct Cache {
    std::mutex mu;
    std::map<int, double> panels;
  };

  double segment(double a, double b) const {
    auto inv_g = [this](double z) { return std::exp(-g_.log_value(z)); };
    return integrate(inv_g, a, b);
  }

  double panel(int j, double a, double b) const {
    {
      std::lock_guard<std::mutex> lk(cache_->mu);
      auto it = cache_->panels.find(j);
      if (it != cache_->panels.end()) return it->second;
    }
    const double v = segment(a, b);
    std::lock_guard<std::mutex> lk(cache_->mu);
    cache_->panels.emplace(j, v);
    return v;
  }

  TailFunction g_;
  TailFunction h_;
  double t0_;
  std::shared_ptr<Cache> cache_;
};

inline double inverse_cumulative_hazard(const HazardView& view, double y) {
  return view.H_inverse(y);
}

inline double total_hazard_psi(const HazardView& view, double t) {
  return view.psi(t);
}

}  // namespace tailvar
