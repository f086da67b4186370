#pragma once

#include <optional>
#include <string>
#include <utility>

#include "tailvar/errors.hpp"
#include "tailvar/probe_grid.hpp"
#include "tailvar/tail_function.hpp"

namespace tailvar {

// A distribution seen through its right tail: survival function (required),
// optional density, optional inverse-CDF sampler mapping a uniform(0,1) draw
// to a sample value.
struct Distribution {
  TailFunction survival;
  std::optional<TailFunction> density;
  std::optional<RealFn> sampler;
  std::string label;

  bool has_density() const { return density.has_value(); }
  bool has_sampler() const { return sampler.has_value(); }
};

// Survival must be nonincreasing on every geometric grid we probe it on;
// when a density is present the survival must actually have decayed across
// the grid.
inline void check_survival_monotone(const Distribution& d, const ProbeGrid& grid) {
  const ProbeGrid g = grid_for(d.survival, grid);
  double prev = d.survival.log_value(g.start);
  double t = g.start;
  for (int k = 1; k < g.count; ++k) {
    t *= g.ratio;
    const double cur = d.survival.log_value(t);
    if (cur > prev + 1e-12)
      throw monotonicity_error("survival of '" + d.label +
                               "' increases on the probe grid near t = " +
                               std::to_string(t));
    prev = cur;
  }
  if (d.has_density()) {
    if (!(d.survival.log_value(t) <= d.survival.log_value(g.start)))
      throw monotonicity_error("survival of '" + d.label +
                               "' did not decay across the probe grid");
  }
}

}  // namespace tailvar
