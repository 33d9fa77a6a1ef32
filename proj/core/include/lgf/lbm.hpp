#pragma once

// Clock process F(t) = int_0^t eps^{a^2/2} e^{a h_eps(B_s)} ds along sampled
// Brownian paths, its inverse and the time-changed (Liouville) path, the
// Revuz-identity statistical test, the clock coordinate-change check, and
// the spectral-dimension estimation pipeline with brute-force Green-kernel
// oracles.

#include <stdexcept>
#include <string>
#include <vector>

#include "lgf/gmc.hpp"
#include "lgf/path.hpp"
#include "lgf/rng.hpp"

namespace lgf {

struct ClockSample {
  std::vector<double> times;     // Brownian time grid
  std::vector<double> f_values;  // nondecreasing, f_values[0] = 0
  double epsilon = 0.0;
  double alpha = 0.0;

  double total() const { return f_values.empty() ? 0.0 : f_values.back(); }
};

// Path point leaves the box margin; last_valid is the index of the last
// grid time whose clock value is trustworthy.
struct BoxExit : std::runtime_error {
  std::size_t last_valid;
  explicit BoxExit(std::size_t lv)
      : std::runtime_error("clock: path exits box margin"), last_valid(lv) {}
};

// Left-Riemann clock on an already-regularized field (regularize() output).
// wrap = true evaluates the field periodically instead of raising BoxExit;
// used by the torus-based estimators below.
ClockSample clock_on_reg(const FieldGrid& reg_field, double alpha,
                         const Path& path, bool wrap = false);

// Convenience: regularizes at epsilon first.
ClockSample clock(const FieldGrid& field, double alpha, const Path& path,
                  double epsilon);

// Piecewise-linear inverse; 0 <= t <= total() required.
double inverse_clock(const ClockSample& clock, double t);

// B evaluated at inverse clock times over out_grid.
Path lbm_path(const FieldGrid& field, double alpha, const Path& path,
              double epsilon, const std::vector<double>& out_grid);

// Lemma-style Revuz identity test: mean_a/se_a is the Monte Carlo mean of
// int_0^T 1_{B(0,R)}(B_t) dF(t) over n_reps Brownian paths from 0 on a
// fixed field realization; mean_b is the deterministic quadrature
// sum_cells mass(y) int_0^T p_t(0,y) dt (closed-form incomplete-gamma
// time integral), se_b = 0.
StatPair revuz_check(const FieldGrid& reg_field, double alpha, double T,
                     double R, int n_reps, RngSeed seed, double ds = 1e-3);

// Coordinate-change check for the clock: compares F_{h,alpha,eps}(c^2 tau)
// against c^{alpha Q} F_{h^c,alpha,eps/c}(tau) with the Brownian rescaling
// B'_u = B_{c^2 u} / c, both sides from the same (field, path) draws so the
// c = 1 and field-free controls are exact.
StatPair clock_scaling_check(int d, double gamma, double c, int n_reps,
                             RngSeed seed, double tau = 0.05, int n = 64,
                             double L = 4.0, int n_steps = 400);

// Regression slope of log E[F(t)^n 1{sup_s |B_s| <= t^{1/2-delta}}] against
// log t over t_list; beta is the log-singularity weight at the origin.
// t values where every replicate is rejected are dropped with a warning.
SlopeFit moment_exponent(int d, double gamma, double beta, int n,
                         const std::vector<double>& t_list, double delta,
                         int n_reps, RngSeed seed, int n_side = 64,
                         double L = 2.0, int n_steps = 256);

struct SpecDimResult {
  double d_spec = 0.0;
  double chi_bar = 0.0;
  std::vector<double> chi_list;
  std::vector<double> slopes;  // regression exponent e(chi) per chi
  std::vector<double> t_grid;
};

// Locates the chi at which the small-t integrand
// E_{0,0,t}[F(t/2)^chi e^{-F(t/2)}] p_t(0,0) has regression exponent -1
// (linear interpolation of e(chi) across chi_list) and returns
// d_spec = 2 (chi_bar + 1).  The bridge expectation is realized as a
// Brownian expectation with the absolute-continuity weight
// 2^{d/2} exp(-|B_{t/2}|^2 / t).
SpecDimResult spec_dim_estimate(int d, double gamma, double beta,
                                const std::vector<double>& chi_list,
                                double t_lo, double t_hi, int n_reps,
                                RngSeed seed, int n_side = 32, double L = 1.5,
                                int n_t = 5, int n_steps = 200);

// Brute-force nested Green sum
// sum_{x_1..x_n in B(0,r)} G(0,x_1) ... G(x_{n-1},x_n) prod mass(x_i) with
// G(x,y) = Gamma(d/2-1) / (2 pi^{d/2}) |x-y|^{2-d}, self-distance clamped
// at dx/2.  d >= 3, n <= 3; cost guard at 1e7 kernel evaluations.
double nested_green_oracle(const MeasureGrid& measure, int n, double r, int d);

struct RegionValues {
  double direct = 0.0;  // potential of B(0,r) evaluated at x
  double total = 0.0;   // sum of the four region contributions
  double region[4] = {0.0, 0.0, 0.0, 0.0};
};

// Partition of B(0,r) relative to x (|x| = a): near-x ball |y-x| < a/2,
// near-origin ball |y| < a/2, intermediate shell |y| <= 2a, and the rest.
// The four contributions regroup exactly to the direct potential.
RegionValues region_bound_check(const MeasureGrid& measure,
                                const std::vector<double>& x, double r, int d);

}  // namespace lgf
