#pragma once

// Quantum-cone radial machinery: first-passage times of the drifted
// spherical-average process, recentring, the tilde process driven by a
// line-conditioned two-sided Brownian motion, stopping-time closeness, the
// convergence-in-b energy-distance diagnostic, and cone field assembly.

#include <utility>
#include <vector>

#include "lgf/gmc.hpp"
#include "lgf/path.hpp"
#include "lgf/rng.hpp"
#include "lgf/sphavg.hpp"
#include "lgf/stochastic.hpp"

namespace lgf {

struct ConeSample {
  double b = 0.0;
  double sigma_b = 0.0;
  RadialSample trajectory;  // S_{b,s} over the requested window
  double drift_beta = 0.0;
};

// First grid time t >= 0 with S_t - q_minus_beta * t <= -b, refined by
// linear interpolation on the crossing step.  Throws if no crossing.
double hitting_sigma(const RadialSample& sample, double q_minus_beta,
                     double b);

// S_{b,s} = S_{s+sigma} - S_sigma on [window_lo, window_hi] (same step as
// the input grid); derivative columns are shifted without re-zeroing.
ConeSample recenter(const RadialSample& sample, double sigma,
                    double window_lo, double window_hi, double b = 0.0,
                    double drift_beta = 0.0);

// Two-sided driving path for the tilde process: the negative side is a
// Brownian motion conditioned (by rejection) to stay above the line with
// the given slope, the positive side is free; glued at 0.
Path tilde_driving(double q_minus_beta, double t_neg, double t_pos, double dt,
                   RngSeed seed, ConditionedStats* stats = nullptr);

// S-tilde and derivatives from the conditioned two-sided path, by the same
// truncated quadrature as simulate_repr (d = 2 returns the path itself).
// The output grid is the portion of the driving grid from front + cutoff on.
RadialSample tilde_process(const Path& conditioned_path, int d,
                           double cutoff);

// (tau_b from the driving path, sigma_b from S-tilde): first passages of
// X_t - q_minus_beta * t below -b for t >= 0.
std::pair<double, double> stopping_pair(const Path& b_tilde_path,
                                        const RadialSample& tilde_s,
                                        double q_minus_beta, double b);

// One recentred sample at level b: simulates the radial process (exact SDE
// for even d >= 4, Brownian motion for d = 2) with extend-and-retry horizon
// doubling (<= 8) until the crossing occurs, then recenters onto
// [window_lo, window_hi].
ConeSample sample_recentred(int d, double q_minus_beta, double b,
                            double window_lo, double window_hi, double dt,
                            RngSeed seed);

// Energy distance 2 E|X-Y| - E|X-X'| - E|Y-Y'| between two empirical
// samples of points in R^k (rows).
double energy_distance(const std::vector<std::vector<double>>& xs,
                       const std::vector<std::vector<double>>& ys);

// Pairwise energy distances between the empirical joint laws of
// (S_{b,s})_{s in probe_times} across the levels in b_list.
std::vector<std::vector<double>> convergence_diagnostic(
    int d, double q_minus_beta, const std::vector<double>& b_list,
    double window_lo, double window_hi,
    const std::vector<double>& probe_times, int n_reps, RngSeed seed,
    double dt = 0.01);

// Cone field: (S_{b,s} + beta s) on the discretized sphere of radius e^{-s}
// around the origin (s clamped to the trajectory window), plus the
// sphere-projection part of an independent field.
FieldGrid cone_field(const ConeSample& radial, const FieldGrid& sphere_part,
                     double beta);

}  // namespace lgf
