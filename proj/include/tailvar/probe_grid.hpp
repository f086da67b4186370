#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tailvar/tail_function.hpp"

namespace tailvar {

// Geometric probe grid t_k = start * ratio^k, k = 0..count-1. The
// multiplicative spacing mirrors the scaling structure of every limit the
// toolkit estimates.
struct ProbeGrid {
  double start = 8.0;
  double ratio = 2.0;
  int count = 48;

  ProbeGrid() = default;
  ProbeGrid(double start_, double ratio_, int count_)
      : start(start_), ratio(ratio_), count(count_) {
    validate();
  }

  void validate() const {
    if (!(start > 0.0)) throw std::invalid_argument("ProbeGrid: start must be > 0");
    if (!(ratio > 1.0)) throw std::invalid_argument("ProbeGrid: ratio must be > 1");
    if (count < 8) throw std::invalid_argument("ProbeGrid: count must be >= 8");
    if (!std::isfinite(back()))
      throw std::invalid_argument("ProbeGrid: largest point overflows");
  }

  double back() const { return start * std::pow(ratio, count - 1); }

  std::vector<double> points() const {
    std::vector<double> pts(static_cast<std::size_t>(count));
    double t = start;
    for (int k = 0; k < count; ++k) {
      pts[static_cast<std::size_t>(k)] = t;
      t *= ratio;
    }
    return pts;
  }

  // Default grid: covers t up to ~1.1e15; count is capped well inside the
  // double range.
  static ProbeGrid standard() { return ProbeGrid(8.0, 2.0, 48); }
};

// Fits a base grid to f's usable range: the start is raised above the
// domain bound (with headroom for multiplicative excursions t*x, x >= x_min),
// and when log f stops being evaluable partway up the grid -- plain-scale
// inputs underflow long before their tails stop being classifiable -- the
// ratio is shrunk so the full probe count lands inside the evaluable span.
inline ProbeGrid grid_for(const TailFunction& f, const ProbeGrid& base,
                          double x_min = 1.0) {
  const double t0 = f.lower_bound();
  double need = std::max(t0, 1e-300);
  if (x_min < 1.0) need /= x_min;
  double start = base.start;
  while (start < need) start *= base.ratio;
  ProbeGrid g(start, base.ratio, base.count);
  while (!std::isfinite(g.back()) && g.count > 8)
    g = ProbeGrid(start, base.ratio, g.count - 1);

  int usable = 0;
  double t = g.start;
  for (int k = 0; k < g.count; ++k, t *= g.ratio) {
    try {
      if (!std::isfinite(f.log_value(t))) break;
    } catch (const std::exception&) {
      break;
    }
    usable = k + 1;
  }
  if (usable >= g.count || usable < 3) return g;
  const double t_max = g.start * std::pow(g.ratio, usable - 1);
  if (t_max / g.start < 4.0) return g;
  const double ratio = std::pow(t_max / g.start, 1.0 / (g.count - 1));
  if (!(ratio > 1.0 + 1e-9)) return g;
  return ProbeGrid(g.start, ratio, g.count);
}

}  // namespace tailvar
