#include "lgf/stochastic.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace lgf {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_increasing(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty time grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("time grid not strictly increasing");
}
}  // namespace

std::vector<double> uniform_grid(double t0, double t1, std::size_t n_steps) {
  if (!(t1 > t0) || n_steps == 0)
    throw std::invalid_argument("uniform_grid: bad range");
  std::vector<double> g(n_steps + 1);
  const double dt = (t1 - t0) / static_cast<double>(n_steps);
  for (std::size_t i = 0; i <= n_steps; ++i)
    g[i] = t0 + dt * static_cast<double>(i);
  g.back() = t1;
  return g;
}

Path sample_brownian(int dim, const std::vector<double>& grid, RngSeed seed) {
  check_increasing(grid);
  if (grid.front() != 0.0)
    throw std::invalid_argument("sample_brownian: grid must start at 0");
  if (dim < 1) throw std::invalid_argument("sample_brownian: dim < 1");
  CounterRng rng(seed);
  Path p;
  p.dim = dim;
  p.times = grid;
  p.origin_index = 0;
  p.values.assign(grid.size() * dim, 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double sd = std::sqrt(grid[i] - grid[i - 1]);
    for (int k = 0; k < dim; ++k)
      p.values[i * dim + k] = p.values[(i - 1) * dim + k] + sd * rng.normal();
  }
  return p;
}

Path sample_bridge(int dim, double t_end, const std::vector<double>& x,
                   const std::vector<double>& y,
                   const std::vector<double>& grid, RngSeed seed) {
  check_increasing(grid);
  if (grid.front() != 0.0 || grid.back() != t_end)
    throw std::invalid_argument("sample_bridge: grid must cover [0, t_end]");
  if (static_cast<int>(x.size()) != dim || static_cast<int>(y.size()) != dim)
    throw std::invalid_argument("sample_bridge: endpoint dimension mismatch");
  Path w = sample_brownian(dim, grid, seed);
  const double* wt = w.point(w.size() - 1);
  Path p;
  p.dim = dim;
  p.times = grid;
  p.values.resize(grid.size() * dim);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double frac = grid[i] / t_end;
    for (int k = 0; k < dim; ++k) {
      const double drift = wt[k] - (y[k] - x[k]);
      p.values[i * dim + k] = x[k] + w.values[i * dim + k] - frac * drift;
    }
  }
  // pin the endpoints exactly against roundoff
  for (int k = 0; k < dim; ++k) {
    p.values[k] = x[k];
    p.values[(grid.size() - 1) * dim + k] = y[k];
  }
  return p;
}

Path sample_two_sided(const std::vector<double>& grid, RngSeed seed) {
  check_increasing(grid);
  std::size_t zero = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i] == 0.0) {
      zero = i;
      break;
    }
  if (zero == grid.size())
    throw std::invalid_argument("sample_two_sided: grid must contain 0");
  CounterRng rng(seed);
  Path p;
  p.dim = 1;
  p.times = grid;
  p.origin_index = zero;
  p.values.assign(grid.size(), 0.0);
  for (std::size_t i = zero + 1; i < grid.size(); ++i)
    p.values[i] =
        p.values[i - 1] + std::sqrt(grid[i] - grid[i - 1]) * rng.normal();
  for (std::size_t i = zero; i-- > 0;)
    p.values[i] =
        p.values[i + 1] + std::sqrt(grid[i + 1] - grid[i]) * rng.normal();
  return p;
}

double heat_kernel(double t, const double* x, const double* y, int dim) {
  if (!(t > 0.0)) throw std::domain_error("heat_kernel: t <= 0");
  double r2 = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double d = x[k] - y[k];
    r2 += d * d;
  }
  return std::pow(kTwoPi * t, -0.5 * dim) * std::exp(-r2 / (2.0 * t));
}

double heat_kernel(double t, const std::vector<double>& x,
                   const std::vector<double>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("heat_kernel: dimension mismatch");
  return heat_kernel(t, x.data(), y.data(), static_cast<int>(x.size()));
}

Path sample_conditioned_above_line(double slope, double horizon,
                                   const std::vector<double>& grid,
                                   RngSeed seed, ConditionedStats* stats) {
  if (!(slope > 0.0))
    throw std::domain_error("sample_conditioned_above_line: slope <= 0");
  if (!(horizon > 0.0))
    throw std::domain_error("sample_conditioned_above_line: horizon <= 0");
  check_increasing(grid);
  if (grid.front() != 0.0 || grid.back() > horizon + 1e-12)
    throw std::invalid_argument(
        "sample_conditioned_above_line: grid must cover [0, horizon]");
  constexpr std::size_t kMaxAttempts = 1u << 22;
  for (std::size_t attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    Path p = sample_brownian(1, grid, seed.stream(attempt));
    bool ok = true;
    for (std::size_t i = 1; i < p.size(); ++i)
      if (!(p.values[i] > -slope * p.times[i])) {
        ok = false;
        break;
      }
    if (ok) {
      if (stats) stats->attempts = attempt;
      return p;
    }
  }
  throw std::runtime_error(
      "sample_conditioned_above_line: rejection budget exhausted");
}

}  // namespace lgf
