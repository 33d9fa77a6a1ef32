#pragma once

// Companion-matrix Langevin systems for the derivative vector of the
// spherical-average process in even dimension d >= 4: construction from d,
// spectral data (integer eigenvalues -(d-2k) with Vandermonde eigenvectors),
// exact stationary simulation, the augmented (integrator) system, and
// Gaussian KL / total-variation mixing bounds.

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "lgf/rng.hpp"

namespace lgf {

struct LangevinSystem {
  int d = 0;                  // ambient dimension (even, >= 4)
  int p = 0;                  // order (d - 2) / 2
  Eigen::VectorXd a_coeffs;   // monic char. polynomial a_0 .. a_{p-1}
  Eigen::MatrixXd A;          // Frobenius companion matrix, Hurwitz
  Eigen::VectorXd b_vec;      // (0, ..., 0, 2^{d/2-1} Gamma(d/2))
  Eigen::VectorXd lambdas;    // lambda_k = d - 2k > 0; eigenvalues -lambda_k
  Eigen::VectorXd weights;    // c_k = 1 / prod_{j != k} (lambda_j - lambda_k)
  Eigen::MatrixXd V, Vinv;    // Vandermonde eigenvectors: A = V diag(-lambda) Vinv
  Eigen::VectorXd w;          // Vinv * b_vec
};

LangevinSystem companion_system(int d);

// e^{A t} via the eigen-decomposition.
Eigen::MatrixXd exp_a(const LangevinSystem& sys, double t);

// Sigma(t) = int_0^t e^{As} b b^T e^{A^T s} ds (closed form); t may be +inf
// through stationary_covariance below.
Eigen::MatrixXd transition_cov(const LangevinSystem& sys, double t);

// Solution of A Sigma + Sigma A^T + b b^T = 0.
Eigen::MatrixXd stationary_covariance(const LangevinSystem& sys);

// One exact Gaussian transition step: N(e^{A dt} state, Sigma(dt)).
Eigen::VectorXd exact_step(const LangevinSystem& sys,
                           const Eigen::VectorXd& state, double dt,
                           CounterRng& rng);
Eigen::VectorXd exact_step(const LangevinSystem& sys,
                           const Eigen::VectorXd& state, double dt,
                           RngSeed seed);

// Draw from the stationary law N(0, Sigma_inf).
Eigen::VectorXd sample_stationary(const LangevinSystem& sys, CounterRng& rng);

// (p+1) x (p+1) exponential of the augmented drift [[0, e_1^T], [0, A]]:
// top-left 1, top-right row e_1^T int_0^t e^{As} ds, bottom-right e^{At}.
Eigen::MatrixXd augmented_exp(const LangevinSystem& sys, double t);

// Covariance of the augmented process at time t,
// int_0^t (e^{Abar s} bbar)(e^{Abar s} bbar)^T ds with bbar = (0, b).
Eigen::MatrixXd augmented_cov(const LangevinSystem& sys, double t);

// KL divergence between the time-t laws of the augmented process started
// from x and from y (same covariance, shifted mean):
// (1/2) (m_x - m_y)^T Sigma_t^{-1} (m_x - m_y).  Requires t >= 1e-4 for
// numerically healthy inversion (Kalman rank gives invertibility for t > 0).
double kl_divergence(const LangevinSystem& sys, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& y, double t);

// Pinsker: TV <= sqrt(KL / 2).
double tv_bound(double kl);

// For each t in t_grid, the max over n_pairs sampled (x, y) in
// B(0, radius)^2 of tv_bound(kl_divergence(x, y, t)).
std::vector<std::pair<double, double>> mixing_profile(
    const LangevinSystem& sys, double radius,
    const std::vector<double>& t_grid, int n_pairs, RngSeed seed);

}  // namespace lgf
