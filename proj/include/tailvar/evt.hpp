#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "tailvar/classify.hpp"
#include "tailvar/distribution.hpp"
#include "tailvar/inverses.hpp"
#include "tailvar/rng.hpp"

// Extreme-value verification: domain of attraction from the tail
// classification, normalizing sequences from the hazard framework, and
// Monte Carlo block maxima checked against the limit law by
// Kolmogorov-Smirnov distance.

namespace tailvar {

enum class EvtDomainKind { Frechet, Gumbel, None };

struct EvtDomain {
  EvtDomainKind kind = EvtDomainKind::None;
  double alpha = 0.0;  // Frechet shape

  std::string describe() const {
    switch (kind) {
      case EvtDomainKind::Frechet: {
        char buf[48];
        std::snprintf(buf, sizeof buf, "Frechet(alpha = %.4g)", alpha);
        return buf;
      }
      case EvtDomainKind::Gumbel: return "Gumbel";
      default: return "None";
    }
  }
};

// Regular(-alpha), alpha > 0 -> Frechet(alpha); GammaClass(-1, g) with its
// self-neglecting certificate -> Gumbel; Slow or Undetermined -> None
// (slowly varying survivals have no affine-normalized max limit).
inline EvtDomain domain_from_class(const TailClass& c) {
  EvtDomain dom;
  if (c.kind == TailKind::Regular && c.index < 0.0) {
    dom.kind = EvtDomainKind::Frechet;
    dom.alpha = -c.index;
  } else if (c.kind == TailKind::GammaClass && c.index == -1.0) {
    dom.kind = EvtDomainKind::Gumbel;
  }
  return dom;
}

inline EvtDomain domain_of_attraction(const Distribution& d,
                                      const ClassifyOptions& opt = {}) {
  check_survival_monotone(d, opt.grid);
  return domain_from_class(classify_tail(d.survival, std::nullopt, opt));
}

// Frechet: a_n = quantile of survival at 1/n, b_n = 0.
// Gumbel:  b_n = same quantile, a_n = R(b_n) (reciprocal hazard scaling).
inline std::pair<double, double> normalizing_constants(const Distribution& d,
                                                       const EvtDomain& dom, long n,
                                                       const ClassifyOptions& opt = {}) {
  if (dom.kind == EvtDomainKind::None)
    throw domain_error("normalizing_constants: no domain of attraction");
  GeneralizedInverse q = generalized_inverse(d.survival, InverseSide::Right, opt.grid);
  const double level = q(1.0 / static_cast<double>(n));
  if (dom.kind == EvtDomainKind::Frechet) return {level, 0.0};
  const double a = reciprocal_hazard_R(d, level);
  return {a, level};
}

// `blocks` independent block maxima of n samples each, affinely normalized
// per the domain: Frechet M/a_n, Gumbel (M - b_n)/a_n. Blocks draw from
// counter-based streams keyed by (seed, block), so the result is identical
// for any worker count.
inline std::vector<double> simulate_maxima(const Distribution& d, const EvtDomain& dom,
                                           long n, int blocks, std::uint64_t seed,
                                           double a_n, double b_n) {
  if (!d.has_sampler())
    throw domain_error("simulate_maxima: distribution '" + d.label + "' has no sampler");
  std::vector<double> out(static_cast<std::size_t>(blocks));
  const RealFn sampler = *d.sampler;
  auto run_block = [&](int b) {
    CounterStream stream(seed, static_cast<std::uint64_t>(b));
    double m = -std::numeric_limits<double>::infinity();
    for (long i = 0; i < n; ++i)
      m = std::max(m, sampler(stream.uniform(static_cast<std::uint64_t>(i))));
    out[static_cast<std::size_t>(b)] =
        dom.kind == EvtDomainKind::Frechet ? m / a_n : (m - b_n) / a_n;
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(std::min<unsigned>(hw, 16));
  if (workers <= 1 || blocks < 2 * workers) {
    for (int b = 0; b < blocks; ++b) run_block(b);
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w]() {
      for (int b = w; b < blocks; b += workers) run_block(b);
    });
  for (auto& th : pool) th.join();
  return out;
}

inline double frechet_cdf(double x, double alpha) {
  return x <= 0.0 ? 0.0 : std::exp(-std::pow(x, -alpha));
}

inline double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

inline double gumbel_quantile(double u) { return -std::log(-std::log(u)); }

// sup |empirical CDF - limit CDF| over the sorted sample.
inline double ks_distance(std::vector<double> sample, const EvtDomain& dom) {
  if (sample.empty()) throw domain_error("ks_distance: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double F = dom.kind == EvtDomainKind::Frechet
                         ? frechet_cdf(sample[i], dom.alpha)
                         : gumbel_cdf(sample[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    worst = std::max({worst, std::abs(F - lo), std::abs(F - hi)});
  }
  return worst;
}

struct EvtReport {
  EvtDomain domain;
  struct Row {
    long n;
    double a_n, b_n, ks;
  };
  std::vector<Row> rows;
  int blocks = 0;
  std::uint64_t seed = 0;
};

inline EvtReport run_evt(const Distribution& d, const std::vector<long>& ns, int blocks,
                         std::uint64_t seed, const ClassifyOptions& opt = {}) {
  EvtReport rep;
  rep.blocks = blocks;
  rep.seed = seed;
  rep.domain = domain_of_attraction(d, opt);
  if (rep.domain.kind == EvtDomainKind::None) return rep;
  for (long n : ns) {
    const auto [a_n, b_n] = normalizing_constants(d, rep.domain, n, opt);
    const auto maxima = simulate_maxima(d, rep.domain, n, blocks, seed, a_n, b_n);
    rep.rows.push_back({n, a_n, b_n, ks_distance(maxima, rep.domain)});
  }
  return rep;
}

}  // namespace tailvar
