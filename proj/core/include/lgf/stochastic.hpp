#pragma once

// Seeded sampling of Brownian motions, bridges, two-sided paths and the
// line-conditioned reference path, plus the Gaussian heat kernel.

#include <cstddef>
#include <vector>

#include "lgf/path.hpp"
#include "lgf/rng.hpp"

namespace lgf {

// Standard Brownian motion from 0; grid must start at 0 and increase.
Path sample_brownian(int dim, const std::vector<double>& grid, RngSeed seed);

// Brownian bridge from x to y over [0, t_end]; grid must span [0, t_end].
// Law: x + W_s - (s/t_end)(W_t_end - (y - x)).
Path sample_bridge(int dim, double t_end, const std::vector<double>& x,
                   const std::vector<double>& y,
                   const std::vector<double>& grid, RngSeed seed);

// Two independent Brownian motions glued at time 0 (1-dimensional).
// The grid must contain 0; value at 0 is exactly 0.
Path sample_two_sided(const std::vector<double>& grid, RngSeed seed);

// (2 pi t)^{-d/2} exp(-|x - y|^2 / (2t)); t > 0.
double heat_kernel(double t, const double* x, const double* y, int dim);
double heat_kernel(double t, const std::vector<double>& x,
                   const std::vector<double>& y);

struct ConditionedStats {
  std::size_t attempts = 0;  // rejection attempts until acceptance
};

// 1-d Brownian motion on [0, horizon] conditioned (by rejection on the grid)
// to satisfy B_t > -slope * t at every grid time after 0.  slope > 0 keeps
// the acceptance rate bounded away from zero.
Path sample_conditioned_above_line(double slope, double horizon,
                                   const std::vector<double>& grid,
                                   RngSeed seed,
                                   ConditionedStats* stats = nullptr);

}  // namespace lgf
