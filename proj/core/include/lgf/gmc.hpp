#pragma once

// Grid realization of the whole-space log-correlated field on a periodic
// box: spectral synthesis with density |k|^{-d}, spherical-average
// regularization (pointwise and FFT whole-grid), optional log singularity,
// GMC cell measures, scaling/thickness/potential estimators, the
// coordinate-change consistency check, and the radial/sphere projection.

#include <cstdint>
#include <string>
#include <vector>

#include "lgf/rng.hpp"

namespace lgf {

struct Lattice {
  int d = 2;       // ambient dimension
  int n = 0;       // sites per axis (power of two)
  double L = 0.0;  // box side length

  double dx() const { return L / n; }
  std::size_t size() const;
  // cell-center coordinate along one axis: (j - n/2) * dx
  double coord(int j) const { return (j - n / 2) * dx(); }
};

struct FieldGrid {
  Lattice lattice;
  std::vector<double> values;  // n^d, row-major over axes
  bool pinned = false;
  bool has_singularity = false;
  double sing_beta = 0.0;
  std::vector<double> sing_center;
  double reg_epsilon = 0.0;  // > 0 when values hold a regularized field
  RngSeed seed_tag{};

  double& at(std::size_t flat) { return values[flat]; }
  double at(std::size_t flat) const { return values[flat]; }
};

struct MeasureGrid {
  Lattice lattice;
  std::vector<double> masses;  // n^d, nonnegative
  double gamma = 0.0;
  double epsilon = 0.0;

  double total() const;
};

// Deterministic antipodally-symmetric quasi-uniform point set on S^{d-1}
// (m rounded up to even); row-major d coordinates per point.
std::vector<double> sphere_points(int d, int m);

// Periodic multilinear interpolation of the grid at an arbitrary point.
double interpolate(const FieldGrid& field, const double* x);

// Stationary Gaussian field with spectral weights |k|^{-d} / S_{d-1}
// (integer wavevectors, zero mode removed) so that the small-separation
// covariance is -log|x-y| + O(1).  pin subtracts the unit-sphere average
// at the origin and requires L > 2 + 4 dx.
FieldGrid synthesize_lgf(const Lattice& lattice, RngSeed seed,
                         bool pin = true);

// Mean of the interpolated field over a sphere point set of size
// ~ (r/dx)^{d-1} centered at x; requires r >= 2 dx and r < L/2.
double spherical_average(const FieldGrid& field, const std::vector<double>& x,
                         double r);

// Whole-grid spherical-average regularization h_eps at every cell center,
// computed as an FFT cross-correlation with the rastered sphere kernel;
// identical to pointwise spherical_average up to the kernel rasterization.
FieldGrid regularize(const FieldGrid& field, double eps);

// h - beta log|x - center|, the center cell clamped at |x - center| = dx/2.
FieldGrid add_log_singularity(const FieldGrid& field, double beta,
                              const std::vector<double>& center);

// Cell masses eps^{gamma^2/2} e^{gamma h_eps(center)} dx^d.
MeasureGrid gmc_measure(const FieldGrid& field, double gamma, double eps);
// Same, reusing an already-regularized field (regularize() output).
MeasureGrid gmc_measure_from_reg(const FieldGrid& reg_field, double gamma);

// Sum of masses of cells with center in B(x, r); ball must sit in the box.
double ball_mass(const MeasureGrid& measure, const std::vector<double>& x,
                 double r);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
};
// Least-squares fit of ys against xs, with the usual slope standard error.
SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

// Slope of log trimmed-mean(ball_mass^q) against log r over the ensemble;
// trim is the symmetric trimming fraction taming lognormal tails.  A
// quantile in (0, 1) switches to the fixed-quantile variant used for the
// almost-sure scaling statements (median slope = gamma(Q - beta) behavior).
SlopeFit scaling_exponent(const std::vector<MeasureGrid>& ensemble, double q,
                          const std::vector<double>& radii,
                          const std::vector<double>& center,
                          double trim = 0.01, double quantile = -1.0);

// Slope of h_eps(x) against -log eps over the given radii (>= 3 required).
double thickness(const FieldGrid& field, const std::vector<double>& x,
                 const std::vector<double>& eps_list);

// Sigma_{cells in B(x, radius)} |x - y|^{2-d} mass(y), self clamped at dx/2.
// d = 2 rejected (the log-kernel potential is out of scope).
double potential(const MeasureGrid& measure, const std::vector<double>& x,
                 double radius, int d);

struct StatPair {
  double mean_a = 0.0, se_a = 0.0;
  double mean_b = 0.0, se_b = 0.0;
};

// Monte Carlo check of the measure coordinate-change relation
// c^{d + gamma^2/2} mu_{h^c,gamma}(A) = mu_{h,gamma}(cA) with
// h^c(x) = h(cx) and matched regularization scales (eps vs eps/c);
// A = B(0, r0).  Both statistics are computed from the same field
// realizations, so c = 1 returns identical numbers.
StatPair coordinate_change_check(int d, double gamma, double c, int n_reps,
                                 RngSeed seed, int n = 64, double L = 4.0,
                                 double r0 = 0.25, double eps = -1.0);

// Radial decomposition around the origin: first output is constant on the
// discretized spheres (shell means), second is the residual; their sum
// reconstructs the input exactly.
std::pair<FieldGrid, FieldGrid> radial_project(const FieldGrid& field);

// Binary snapshot (little-endian doubles, row-major) round-trip.
void save_snapshot(const FieldGrid& field, const std::string& path);
FieldGrid load_snapshot(const std::string& path);

}  // namespace lgf
