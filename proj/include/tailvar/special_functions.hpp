#pragma once

#include <cmath>
#include <limits>
#include <numbers>

// Normal-law helpers used by the catalog and the samplers. Everything here
// is valid over the full double range: survival quantities are exposed in
// log scale so that t far beyond the underflow point of erfc stays usable.

namespace tailvar {

// Scaled complementary error function erfcx(x) = exp(x^2) erfc(x), x >= 0.
// Direct product below x = 6 (both factors representable), asymptotic
// series above (the series' smallest term is ~2e-16 at x = 6).
inline double erfcx(double x) {
  if (x < 6.0) return std::exp(x * x) * std::erfc(x);
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double next = term * (2 * k - 1) * inv2x2;
    if (next >= std::abs(term)) break;  // asymptotic series: stop at min term
    term = next;
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum / (x * std::numbers::sqrt2 * std::sqrt(std::numbers::pi / 2.0));
}

inline double norm_pdf(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}

inline double norm_log_pdf(double t) {
  return -0.5 * t * t - 0.5 * std::log(2.0 * std::numbers::pi);
}

// Survival Phi_bar(t); underflows to 0 for t > ~38.6 (use norm_log_sf then).
inline double norm_sf(double t) { return 0.5 * std::erfc(t / std::numbers::sqrt2); }

// log Phi_bar(t), accurate over the whole double range.
inline double norm_log_sf(double t) {
  if (t < 0.0) return std::log1p(-norm_sf(-t));
  return std::log(0.5 * erfcx(t / std::numbers::sqrt2)) - 0.5 * t * t;
}

// Hazard rate phi(t)/Phi_bar(t) without intermediate underflow.
inline double norm_hazard(double t) {
  if (t < 0.0) return norm_pdf(t) / norm_sf(t);
  return 2.0 / (std::sqrt(2.0 * std::numbers::pi) * erfcx(t / std::numbers::sqrt2));
}

// Inverse CDF. Acklam's rational approximation (|rel err| < 1.2e-9)
// polished with one Halley step, which brings it to near machine accuracy.
inline double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) return std::numeric_limits<double>::quiet_NaN();
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Halley refinement on Phi(x) - p = 0.
  const double e = (0.5 * std::erfc(-x / std::numbers::sqrt2)) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace tailvar
