#pragma once

// Discretized trajectory: a strictly increasing time grid and one point in
// R^dim per grid time.  Two-sided paths record the index of time zero.

#include <cstddef>
#include <vector>

namespace lgf {

struct Path {
  std::vector<double> times;
  std::vector<double> values;  // times.size() * dim, row-major
  int dim = 1;
  std::size_t origin_index = 0;

  std::size_t size() const { return times.size(); }
  double* point(std::size_t i) { return values.data() + i * dim; }
  const double* point(std::size_t i) const { return values.data() + i * dim; }
  // 1-d convenience accessor
  double at(std::size_t i) const { return values[i * dim]; }
};

// n_steps + 1 equally spaced points covering [t0, t1].
std::vector<double> uniform_grid(double t0, double t1, std::size_t n_steps);

}  // namespace lgf
