#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "tailvar/classify.hpp"
#include "tailvar/hazard.hpp"
#include "tailvar/limits.hpp"
#include "tailvar/quadrature.hpp"

// Extraction of the representation components behind regular and Gamma-type
// variation: eps(t) and c(t) in f = c(t) exp{int eps/z dz} t^rho, and A(t)
// in f ~ A(t) exp{alpha H(t)}. The decompositions are exact by construction;
// the informative output is the trend of the extracted components, plus a
// residual that measures quadrature consistency between two independent
// evaluation paths.

namespace tailvar {

struct RepresentationReport {
  enum class Kind { KaramataRV, GammaOmey };
  struct Row {
    double t;
    double eps_or_A;   // eps(t) for Karamata, A(t) for Gamma
    double c_or_B;     // c(t) for Karamata, g(t) A'(t)/A(t) for Gamma
    double residual;   // per-row reconstruction consistency
  };
  Kind kind = Kind::KaramataRV;
  double index = 0.0;
  std::vector<Row> samples;
  double residual = std::numeric_limits<double>::quiet_NaN();  // validation probes
  std::optional<TailFunction> auxiliary;
};

namespace detail {

// Running integral of `fn` across grid points, each segment integrated
// independently; returns partial sums aligned with pts.
template <class F>
std::vector<double> running_integral(F&& fn, double anchor,
                                     const std::vector<double>& pts,
                                     const QuadratureOptions& opt) {
  std::vector<double> acc(pts.size());
  double sum = 0.0, lo = anchor;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] > lo) {
      sum += integrate(fn, lo, pts[i], opt);
      lo = pts[i];
    }
    acc[i] = sum;
  }
  return acc;
}

// the integrals here live in an exponent, so absolute 1e-12 is noise; the
// panel budget is raised for oscillatory slowly varying parts
inline QuadratureOptions exponent_quad(double rel) {
  QuadratureOptions q;
  q.rel_tol = rel;
  q.abs_tol = 1e-12;
  q.max_panels = 20000;
  return q;
}

}  // namespace detail

// f = c(t) t^rho exp{int_{t0}^t eps(z)/z dz} with eps(t) = t f'(t)/f(t) - rho.
// c then collapses all residual variation: for a von Mises-regular f the
// c samples settle at a constant while eps carries the slowly varying part.
inline RepresentationReport karamata_decompose(const TailFunction& f, double rho,
                                               double t0,
                                               const ProbeGrid& grid = ProbeGrid::standard()) {
  RepresentationReport rep;
  rep.kind = RepresentationReport::Kind::KaramataRV;
  rep.index = rho;
  const ProbeGrid g = grid_for(f, grid);
  const double anchor = std::max(t0, f.lower_bound());
  const auto pts = g.points();

  auto eps = [&f, rho](double t) { return t * f.dlog_value(t) - rho; };
  auto integrand = [&eps](double z) { return eps(z) / z; };

  const QuadratureOptions run_opt = detail::exponent_quad(1e-8);
  std::vector<double> irun;
  try {
    irun = detail::running_integral(integrand, anchor, pts, run_opt);
  } catch (const std::exception& e) {
    throw representation_error(std::string("karamata_decompose: ") + e.what());
  }

  const QuadratureOptions direct_opt = detail::exponent_quad(1e-9);  // independent path
  auto log_c = [&](double t, double integral) {
    return f.log_value(t) - rho * std::log(t) - integral;
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    RepresentationReport::Row row;
    row.t = pts[i];
    row.eps_or_A = eps(pts[i]);
    row.c_or_B = std::exp(log_c(pts[i], irun[i]));
    const double idir = integrate(integrand, anchor, pts[i], direct_opt);
    row.residual = std::abs(std::expm1(idir - irun[i]));
    rep.samples.push_back(row);
  }

  // validation probes interleaved between calibration points
  double worst = 0.0;
  const std::size_t stride = std::max<std::size_t>(1, pts.size() / 9);
  int used = 0;
  for (std::size_t i = 0; i + 1 < pts.size() && used < 8; i += stride, ++used) {
    const double s = std::sqrt(pts[i] * pts[i + 1]);
    const double irun_s = irun[i] + integrate(integrand, pts[i], s, run_opt);
    const double idir_s = integrate(integrand, anchor, s, direct_opt);
    const double log_fhat = log_c(s, irun_s) + rho * std::log(s) + idir_s;
    worst = std::max(worst, std::abs(std::expm1(log_fhat - f.log_value(s))));
  }
  rep.residual = worst;
  return rep;
}

// Normalized slowly varying equivalent l1(t) = c* exp{int eps/z dz} with
// c* the limit of the c samples; l1(t) / (f(t) t^-rho) -> 1.
inline TailFunction normalized_sv(const TailFunction& f, double rho, double t0,
                                  const ProbeGrid& grid = ProbeGrid::standard()) {
  RepresentationReport rep = karamata_decompose(f, rho, t0, grid);
  std::vector<double> cs;
  cs.reserve(rep.samples.size());
  for (const auto& r : rep.samples) cs.push_back(r.c_or_B);
  const ProbeGrid g = grid_for(f, grid);
  const LimitEstimate climit = estimate_sequence(cs, g, "", 0);
  if (!climit.finite() || !(climit.value > 0.0))
    throw representation_error(
        "normalized_sv: c(t) does not converge on the probe range (" +
        climit.diagnostic + ")");
  const double cstar = climit.value;
  const double anchor = std::max(t0, f.lower_bound());
  auto eps_over_z = [f, rho](double z) { return f.dlog_value(z) - rho / z; };
  auto log_eval = [cstar, anchor, eps_over_z](double t) {
    return std::log(cstar) + integrate(eps_over_z, anchor, t, detail::exponent_quad(1e-8));
  };
  auto eval = [log_eval](double t) { return std::exp(log_eval(t)); };
  auto dlog = [f, rho](double t) { return f.dlog_value(t) - rho / t; };
  return TailFunction(eval, std::nullopt, anchor, "normalized_sv(" + f.label() + ")",
                      log_eval, dlog);
}

// f ~ A(t) exp{alpha H(t)}, H = int 1/g: extracts A and the decay witness
// g A'/A (centered finite differences on log A, relative step 1e-4).
//
// Precision note: log A is the difference of log f and alpha H, which both
// grow like H(t). Once H exceeds ~1e12 the difference loses the digits the
// finite difference needs, so Gamma reports are sampled on a shorter grid
// than Karamata ones.
inline RepresentationReport gamma_decompose(const TailFunction& f, double alpha,
                                            const TailFunction& g, double t0,
                                            const ProbeGrid& grid = ProbeGrid(8.0, 2.0, 12)) {
  RepresentationReport rep;
  rep.kind = RepresentationReport::Kind::GammaOmey;
  rep.index = alpha;
  rep.auxiliary = g;
  ProbeGrid pg = grid_for(f, grid);
  pg = grid_for(g, pg);
  const double anchor = std::max({t0, f.lower_bound(), g.lower_bound()});
  HazardView view(g, anchor);

  auto log_A = [&](double t) { return f.log_value(t) - alpha * view.H(t); };
  auto gA_over_A = [&](double t) {
    const double h = 1e-4 * t;
    return g.value(t) * (log_A(t + h) - log_A(t - h)) / (2.0 * h);
  };

  auto inv_g = [&g](double z) { return std::exp(-g.log_value(z)); };
  const QuadratureOptions direct_opt = detail::exponent_quad(1e-9);

  const auto pts = pg.points();
  for (double t : pts) {
    RepresentationReport::Row row;
    row.t = t;
    row.eps_or_A = std::exp(log_A(t));
    row.c_or_B = gA_over_A(t);
    const double hdir = integrate(inv_g, anchor, t, direct_opt);
    row.residual = std::abs(std::expm1(alpha * (hdir - view.H(t))));
    rep.samples.push_back(row);
  }

  double worst = 0.0;
  const std::size_t stride = std::max<std::size_t>(1, pts.size() / 9);
  int used = 0;
  for (std::size_t i = 0; i + 1 < pts.size() && used < 8; i += stride, ++used) {
    const double s = std::sqrt(pts[i] * pts[i + 1]);
    const double hdir = integrate(inv_g, anchor, s, direct_opt);
    const double log_fhat = log_A(s) + alpha * hdir;
    worst = std::max(worst, std::abs(std::expm1(log_fhat - f.log_value(s))));
  }
  rep.residual = worst;
  return rep;
}

// Running sup/inf of f over [t0, t] on a geometric subgrid, refined until
// stable to relative 1e-6 (density capped at 2^21 points).
enum class EnvelopeDirection { Sup, Inf };

inline double monotone_envelope(const TailFunction& f, EnvelopeDirection dir,
                                double t) {
  const double t0 = f.lower_bound();
  if (!(t >= t0)) throw domain_error("monotone_envelope: t below domain");
  auto scan = [&](int n) {
    double best = f.value(t0);
    for (int i = 1; i <= n; ++i) {
      double s;
      if (t0 > 0.0)
        s = t0 * std::pow(t / t0, static_cast<double>(i) / n);
      else
        s = t0 + (t - t0) * static_cast<double>(i) / n;
      const double v = f.value(s);
      best = dir == EnvelopeDirection::Sup ? std::max(best, v) : std::min(best, v);
    }
    return best;
  };
  int n = 64;
  double prev = scan(n);
  while (n < (1 << 21)) {
    n *= 2;
    const double cur = scan(n);
    if (std::abs(cur - prev) <= 1e-6 * std::abs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

// Strictly monotone smooth tail equivalent: rho * int_{t0}^t f(s)/s ds for
// rho > 0; for rho < 0 the construction is applied to 1/f and inverted.
inline TailFunction smooth_equivalent(const TailFunction& f, double rho, double t0) {
  if (rho == 0.0)
    throw representation_error("smooth_equivalent: rho = 0 is degenerate");
  const double anchor = std::max(t0, f.lower_bound());
  const double out_t0 = anchor * (1.0 + 1e-6) + 1e-12;
  if (rho > 0.0) {
    auto integrand = [f](double s) { return f.value(s) / s; };
    auto eval = [integrand, anchor, rho](double t) {
      return rho * integrate(integrand, anchor, t);
    };
    auto deriv = [f, rho](double t) { return rho * f.value(t) / t; };
    return TailFunction(eval, deriv, out_t0, "smooth_eq(" + f.label() + ")");
  }
  auto integrand = [f](double s) { return 1.0 / (f.value(s) * s); };
  auto eval = [integrand, anchor, rho](double t) {
    return 1.0 / (-rho * integrate(integrand, anchor, t));
  };
  return TailFunction(eval, std::nullopt, out_t0, "smooth_eq(" + f.label() + ")");
}

}  // namespace tailvar
