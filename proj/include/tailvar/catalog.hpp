#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "tailvar/distribution.hpp"
#include "tailvar/special_functions.hpp"
#include "tailvar/tail_class.hpp"

// Closed-form reference distributions with known ground-truth tail
// classifications. Each entry ships analytic log-survival and log-derivative
// channels, so the classifiers stay exact far beyond the underflow point of
// the plain survival values.

namespace tailvar {

struct CatalogEntry {
  Distribution distribution;
  TailClass truth;
  std::optional<TailFunction> truth_aux;  // known auxiliary g for Gamma entries
};

namespace cat {

inline std::string param_label(const char* family, const char* p, double v) {
  std::ostringstream os;
  os << family << "(" << p << "=" << v << ")";
  return os.str();
}

}  // namespace cat

inline CatalogEntry exponential(double lambda) {
  const std::string name = cat::param_label("exponential", "lambda", lambda);
  TailFunction sf(
      [lambda](double t) { return std::exp(-lambda * t); },
      [lambda](double t) { return -lambda * std::exp(-lambda * t); }, 0.0,
      name + " survival", [lambda](double t) { return -lambda * t; },
      [lambda](double) { return -lambda; });
  TailFunction pdf(
      [lambda](double t) { return lambda * std::exp(-lambda * t); }, std::nullopt,
      0.0, name + " density",
      [lambda](double t) { return std::log(lambda) - lambda * t; },
      [lambda](double) { return -lambda; });
  CatalogEntry e;
  e.distribution = {sf, pdf, [lambda](double u) { return -std::log1p(-u) / lambda; },
                    name};
  TailFunction g([lambda](double) { return 1.0 / lambda; },
                 [](double) { return 0.0; }, 0.0, "1/lambda",
                 [lambda](double) { return -std::log(lambda); },
                 [](double) { return 0.0; });
  e.truth = TailClass::gamma(-1.0, g);
  e.truth_aux = g;
  return e;
}

inline CatalogEntry pareto(double alpha) {
  const std::string name = cat::param_label("pareto", "alpha", alpha);
  TailFunction sf([alpha](double t) { return std::pow(t, -alpha); },
                  [alpha](double t) { return -alpha * std::pow(t, -alpha - 1.0); },
                  1.0, name + " survival",
                  [alpha](double t) { return -alpha * std::log(t); },
                  [alpha](double t) { return -alpha / t; });
  TailFunction pdf([alpha](double t) { return alpha * std::pow(t, -alpha - 1.0); },
                   std::nullopt, 1.0, name + " density",
                   [alpha](double t) {
                     return std::log(alpha) - (alpha + 1.0) * std::log(t);
                   },
                   [alpha](double t) { return -(alpha + 1.0) / t; });
  CatalogEntry e;
  e.distribution = {sf, pdf,
                    [alpha](double u) { return std::pow(1.0 - u, -1.0 / alpha); },
                    name};
  e.truth = TailClass::regular(-alpha);
  return e;
}

inline CatalogEntry standard_normal() {
  const std::string name = "standard_normal";
  TailFunction sf([](double t) { return norm_sf(t); },
                  [](double t) { return -norm_pdf(t); }, 1.0, name + " survival",
                  [](double t) { return norm_log_sf(t); },
                  [](double t) { return -norm_hazard(t); });
  TailFunction pdf([](double t) { return norm_pdf(t); },
                   [](double t) { return -t * norm_pdf(t); }, 1.0, name + " density",
                   [](double t) { return norm_log_pdf(t); },
                   [](double t) { return -t; });
  CatalogEntry e;
  e.distribution = {sf, pdf, [](double u) { return norm_quantile(u); }, name};
  TailFunction g([](double t) { return 1.0 / t; }, [](double t) { return -1.0 / (t * t); },
                 1.0, "1/t", [](double t) { return -std::log(t); },
                 [](double t) { return -1.0 / t; });
  e.truth = TailClass::gamma(-1.0, g);
  e.truth_aux = g;
  return e;
}

// Density x^-1 (log x)^-2 on (e, inf); survival 1/log x.
inline CatalogEntry log_tail() {
  const double t0 = std::exp(1.0);
  TailFunction sf([](double t) { return 1.0 / std::log(t); },
                  [](double t) {
                    const double L = std::log(t);
                    return -1.0 / (t * L * L);
                  },
                  t0, "log_tail survival",
                  [](double t) { return -std::log(std::log(t)); },
                  [](double t) { return -1.0 / (t * std::log(t)); });
  TailFunction pdf([](double t) {
                     const double L = std::log(t);
                     return 1.0 / (t * L * L);
                   },
                   std::nullopt, t0, "log_tail density",
                   [](double t) {
                     return -std::log(t) - 2.0 * std::log(std::log(t));
                   },
                   [](double t) { return -(1.0 + 2.0 / std::log(t)) / t; });
  CatalogEntry e;
  e.distribution = {sf, pdf, [](double u) { return std::exp(1.0 / (1.0 - u)); },
                    "log_tail"};
  e.truth = TailClass::slow();
  return e;
}

// Hazard rate h(t) = t^k, k > -1: survival exp{-t^(k+1)/(k+1)}.
inline CatalogEntry weibull_hazard(double k) {
  const std::string name = cat::param_label("weibull_hazard", "k", k);
  const double kp1 = k + 1.0;
  const double pdf_t0 = (k == 0.0) ? 0.0 : 0.5;
  TailFunction sf([kp1](double t) { return std::exp(-std::pow(t, kp1) / kp1); },
                  std::nullopt, 0.0, name + " survival",
                  [kp1](double t) { return -std::pow(t, kp1) / kp1; },
                  [k](double t) { return -std::pow(t, k); });
  TailFunction pdf(
      [k, kp1](double t) { return std::pow(t, k) * std::exp(-std::pow(t, kp1) / kp1); },
      std::nullopt, pdf_t0, name + " density",
      [k, kp1](double t) { return k * std::log(t) - std::pow(t, kp1) / kp1; },
      [k](double t) { return k / t - std::pow(t, k); });
  CatalogEntry e;
  e.distribution = {sf, pdf,
                    [kp1](double u) { return std::pow(-kp1 * std::log1p(-u), 1.0 / kp1); },
                    name};
  TailFunction g([k](double t) { return std::pow(t, -k); },
                 [k](double t) { return -k * std::pow(t, -k - 1.0); }, 0.5, "t^-k",
                 [k](double t) { return -k * std::log(t); },
                 [k](double t) { return -k / t; });
  e.truth = TailClass::gamma(-1.0, g);
  e.truth_aux = g;
  return e;
}

inline CatalogEntry frechet(double alpha) {
  const std::string name = cat::param_label("frechet", "alpha", alpha);
  auto y = [alpha](double t) { return std::pow(t, -alpha); };
  TailFunction sf([y](double t) { return -std::expm1(-y(t)); }, std::nullopt, 0.5,
                  name + " survival",
                  [y](double t) { return std::log(-std::expm1(-y(t))); },
                  [alpha, y](double t) {
                    const double yt = y(t);
                    // F' / Fbar with F = exp(-y)
                    return -alpha * (yt / t) * std::exp(-yt) / (-std::expm1(-yt));
                  });
  TailFunction pdf(
      [alpha, y](double t) {
        return alpha * std::pow(t, -alpha - 1.0) * std::exp(-y(t));
      },
      std::nullopt, 0.5, name + " density",
      [alpha, y](double t) {
        return std::log(alpha) - (alpha + 1.0) * std::log(t) - y(t);
      },
      [alpha, y](double t) { return -(alpha + 1.0) / t + alpha * y(t) / t; });
  CatalogEntry e;
  e.distribution = {sf, pdf,
                    [alpha](double u) { return std::pow(-std::log(u), -1.0 / alpha); },
                    name};
  e.truth = TailClass::regular(-alpha);
  return e;
}

inline CatalogEntry lognormal() {
  const std::string name = "lognormal";
  TailFunction sf([](double t) { return norm_sf(std::log(t)); }, std::nullopt, 1.5,
                  name + " survival",
                  [](double t) { return norm_log_sf(std::log(t)); },
                  [](double t) { return -norm_hazard(std::log(t)) / t; });
  TailFunction pdf([](double t) { return norm_pdf(std::log(t)) / t; }, std::nullopt,
                   1.5, name + " density",
                   [](double t) { return norm_log_pdf(std::log(t)) - std::log(t); },
                   [](double t) { return -(std::log(t) + 1.0) / t; });
  CatalogEntry e;
  e.distribution = {sf, pdf, [](double u) { return std::exp(norm_quantile(u)); }, name};
  TailFunction g([](double t) { return t / std::log(t); },
                 std::nullopt, 1.5, "t/log t",
                 [](double t) { return std::log(t) - std::log(std::log(t)); },
                 [](double t) { return (1.0 - 1.0 / std::log(t)) / t; });
  e.truth = TailClass::gamma(-1.0, g);
  e.truth_aux = g;
  return e;
}

// Survival-only entry F_bar = 1/log t; exercises the no-density paths.
inline CatalogEntry slow_survival() {
  const double t0 = std::exp(1.0);
  TailFunction sf([](double t) { return 1.0 / std::log(t); }, std::nullopt, t0,
                  "slow_survival",
                  [](double t) { return -std::log(std::log(t)); },
                  [](double t) { return -1.0 / (t * std::log(t)); });
  CatalogEntry e;
  e.distribution = {sf, std::nullopt,
                    [](double u) { return std::exp(1.0 / (1.0 - u)); },
                    "slow_survival"};
  e.truth = TailClass::slow();
  return e;
}

inline std::vector<CatalogEntry> catalog() {
  return {exponential(1.0), exponential(2.0), pareto(1.0),      pareto(2.0),
          pareto(3.0),      standard_normal(), log_tail(),      weibull_hazard(1.0),
          weibull_hazard(2.0), frechet(2.0),   frechet(3.0),    lognormal(),
          slow_survival()};
}

}  // namespace tailvar
