#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "tailvar/errors.hpp"

namespace tailvar {

using RealFn = std::function<double(double)>;

namespace detail {

inline std::string fmt_at(const char* what, double t) {
  std::ostringstream os;
  os << what << " at t = " << t;
  return os.str();
}

}  // namespace detail

// A positive function on [t0, inf), the universal input of the toolkit.
//
// Besides plain evaluation it can carry two extra analytic channels:
//   log_eval : t -> log f(t)
//   dlog     : t -> f'(t)/f(t)      (the signed generalized hazard)
// Tail classification works on ratios and log-derivatives, so these channels
// keep rapidly decaying survival functions usable far beyond the point where
// f itself underflows. When absent they are derived from eval, and the
// derivative falls back to a central finite difference on log f with
// relative step h = max(t,1) * eps^(1/3).
class TailFunction {
 public:
  TailFunction() = default;

  TailFunction(RealFn eval, std::optional<RealFn> deriv, double t0,
               std::string label, std::optional<RealFn> log_eval = {},
               std::optional<RealFn> dlog = {})
      : eval_(std::move(eval)),
        deriv_(std::move(deriv)),
        log_eval_(std::move(log_eval)),
        dlog_(std::move(dlog)),
        t0_(t0),
        label_(std::move(label)) {}

  double lower_bound() const { return t0_; }
  const std::string& label() const { return label_; }
  bool valid() const { return static_cast<bool>(eval_); }

  // True when the derivative is a finite-difference substitute.
  bool derivative_is_approximate() const { return !deriv_ && !dlog_; }

  bool has_dlog_channel() const { return static_cast<bool>(dlog_); }

  double value(double t) const {
    check_domain(t);
    const double v = eval_(t);
    if (!std::isfinite(v) || v <= 0.0)
      throw domain_error(detail::fmt_at(
          ("function '" + label_ + "' returned a non-positive or non-finite value").c_str(), t));
    return v;
  }

  // log f(t); prefers an analytic log channel and survives value underflow
  // whenever one is present.
  double log_value(double t) const {
    if (log_eval_) {
      check_domain(t);
      const double lv = (*log_eval_)(t);
      if (std::isnan(lv))
        throw domain_error(detail::fmt_at(
            ("log of function '" + label_ + "' returned NaN").c_str(), t));
      return lv;
    }
    return std::log(value(t));
  }

  // f'(t)/f(t).
  double dlog_value(double t) const {
    if (dlog_) {
      check_domain(t);
      return (*dlog_)(t);
    }
    if (deriv_) return (*deriv_)(t) / value(t);
    return fd_dlog(t);
  }

  double derivative(double t) const {
    if (deriv_) {
      check_domain(t);
      return (*deriv_)(t);
    }
    return dlog_value(t) * value(t);
  }

  // Pointwise ratio f(a)/f(b) computed in log scale.
  double ratio(double a, double b) const {
    return std::exp(log_value(a) - log_value(b));
  }

 private:
  void check_domain(double t) const {
    if (!eval_) throw domain_error("evaluating an empty TailFunction");
    if (!(t >= t0_))
      throw domain_error(detail::fmt_at(
          ("function '" + label_ + "' evaluated below its lower bound").c_str(), t));
  }

  // Log-log slope over a wide relative step. Differencing log f across
  // t e^{+-delta} is exact for pure powers and keeps the rounding error at
  // eps/delta of the log values; the classical max(t,1) eps^(1/3) step
  // carries ~1e-10 noise on t f'/f, which iterated extrapolation of slowly
  // converging limits amplifies beyond use.
  double fd_dlog(double t) const {
    const double delta = 2e-3;
    if (t > 0.0 && t * std::exp(-delta) >= t0_) {
      const double lo = t * std::exp(-delta);
      const double hi = t * std::exp(delta);
      return (log_value(hi) - log_value(lo)) / (2.0 * delta * t);
    }
    const double h = std::max(std::abs(t), 1.0) *
                     std::cbrt(std::numeric_limits<double>::epsilon());
    if (t - h >= t0_)
      return (log_value(t + h) - log_value(t - h)) / (2.0 * h);
    // second-order one-sided stencil near the left endpoint
    return (-3.0 * log_value(t) + 4.0 * log_value(t + h) - log_value(t + 2.0 * h)) /
           (2.0 * h);
  }

  RealFn eval_;
  std::optional<RealFn> deriv_;
  std::optional<RealFn> log_eval_;
  std::optional<RealFn> dlog_;
  double t0_ = 0.0;
  std::string label_;
};

// Builds a TailFunction and sanity-probes it near t0. A probe returning a
// non-positive or non-finite value raises a domain error naming t.
inline TailFunction make_analytic(RealFn eval, std::optional<RealFn> deriv,
                                  double t0, std::string label,
                                  std::optional<RealFn> log_eval = {},
                                  std::optional<RealFn> dlog = {}) {
  TailFunction f(std::move(eval), std::move(deriv), t0, std::move(label),
                 std::move(log_eval), std::move(dlog));
  const double probes[] = {t0, t0 * 1.5 + 0.5, t0 * 4.0 + 1.0};
  for (double t : probes) f.value(t);
  return f;
}

inline TailFunction make_analytic(RealFn eval, double t0, std::string label) {
  return make_analytic(std::move(eval), std::nullopt, t0, std::move(label));
}

// Pointwise algebraic transforms. Derivative and log channels propagate by
// the chain/product rule whenever the operands carry them.
enum class TransformKind { Power, Product, Compose, Reciprocal, ShiftLog };

inline TailFunction transform_power(const TailFunction& f, double beta) {
  auto eval = [f, beta](double t) { return std::exp(beta * f.log_value(t)); };
  auto log_eval = [f, beta](double t) { return beta * f.log_value(t); };
  auto dlog = [f, beta](double t) { return beta * f.dlog_value(t); };
  return TailFunction(eval, std::nullopt, f.lower_bound(),
                      f.label() + "^" + std::to_string(beta), log_eval, dlog);
}

inline TailFunction transform_product(const TailFunction& f, const TailFunction& g) {
  const double t0 = std::max(f.lower_bound(), g.lower_bound());
  auto eval = [f, g](double t) { return std::exp(f.log_value(t) + g.log_value(t)); };
  auto log_eval = [f, g](double t) { return f.log_value(t) + g.log_value(t); };
  auto dlog = [f, g](double t) { return f.dlog_value(t) + g.dlog_value(t); };
  return TailFunction(eval, std::nullopt, t0, f.label() + "*" + g.label(),
                      log_eval, dlog);
}

inline TailFunction transform_reciprocal(const TailFunction& f) {
  auto eval = [f](double t) { return std::exp(-f.log_value(t)); };
  auto log_eval = [f](double t) { return -f.log_value(t); };
  auto dlog = [f](double t) { return -f.dlog_value(t); };
  return TailFunction(eval, std::nullopt, f.lower_bound(), "1/(" + f.label() + ")",
                      log_eval, dlog);
}

// f1 o f2. Requires f2 -> inf (checked on a doubling probe scan, which also
// locates the smallest t with f2(t) staying inside f1's domain).
inline TailFunction transform_compose(const TailFunction& f1, const TailFunction& f2) {
  const double t0 = f2.lower_bound();
  double probe = std::max(t0, 0.5);
  const double first = f2.value(probe);
  double last = first;
  bool reached = first >= f1.lower_bound();
  double reach_t = probe;
  for (int i = 0; i < 60 && probe < 1e290; ++i) {
    probe = probe * 2.0 + 1.0;
    last = f2.value(probe);
    if (last < f1.lower_bound()) {
      reached = false;  // dipped back out; restart the reach point
    } else if (!reached) {
      reached = true;
      reach_t = probe;
    }
  }
  if (!reached || !(last >= 4.0 * first + 1.0))
    throw domain_error("compose: inner function does not diverge into the outer domain (" +
                       f2.label() + ")");
  auto eval = [f1, f2](double t) { return f1.value(f2.value(t)); };
  auto log_eval = [f1, f2](double t) { return f1.log_value(f2.value(t)); };
  auto dlog = [f1, f2](double t) {
    return f1.dlog_value(f2.value(t)) * f2.derivative(t);
  };
  return TailFunction(eval, std::nullopt, reach_t,
                      f1.label() + "(" + f2.label() + ")", log_eval, dlog);
}

// t -> f(log t); maps additive-scale behavior onto the multiplicative scale.
inline TailFunction transform_shift_log(const TailFunction& f) {
  const double t0 = std::exp(std::min(f.lower_bound(), 700.0));
  auto eval = [f](double t) { return f.value(std::log(t)); };
  auto log_eval = [f](double t) { return f.log_value(std::log(t)); };
  auto dlog = [f](double t) { return f.dlog_value(std::log(t)) / t; };
  return TailFunction(eval, std::nullopt, t0, f.label() + "(log t)", log_eval, dlog);
}

}  // namespace tailvar
