#pragma once

// Spherical-average process S_t = h_{e^{-t}}(x) - h_1(x): analytic
// covariance kernels by adaptive quadrature, two independent simulators
// (the truncated moving-average representation driven by a two-sided
// Brownian motion, and the exact companion-matrix SDE), the derivative
// autocovariance and its closed-form power spectrum, and the two quadrature
// identities behind the spectrum computation.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lgf/path.hpp"
#include "lgf/rng.hpp"

namespace lgf {

struct RadialSample {
  std::vector<double> times;
  std::vector<double> s;      // S_t, s[0] anchored per method contract
  Eigen::MatrixXd derivs;     // times.size() x c_d (0 columns when d = 2)
  std::string method;         // "representation" | "sde" | "brownian"
  double trunc_error = 0.0;   // recorded representation truncation bound
};

// K_{r1,r2} = -c(d) int_0^pi log(r1^2 + r2^2 - 2 r1 r2 cos t) sin^{d-2} t dt.
double kernel_diag(double r1, double r2, int d);

// Var(S_t) = |t| + 2 c(d) int_0^pi log((1 + e^{-2|t|} - 2 e^{-|t|} cos t) /
// (2 - 2 cos t)) sin^{d-2} t dt; equals |t| exactly when d = 2.
double variance_increment(double t, int d);

// Stationary autocovariance of S^{(1)}:
// c(d) int_0^pi (1 - cos t cosh u) / (cos t - cosh u)^2 sin^{d-2} t dt,
// with the simplified integrand sin^{d-2} t / (1 - cos t) at u = 0.
double deriv_autocov(double u, int d);

// (1 / sqrt(2 pi)) 2^{d-2} Gamma(d/2)^2 / prod_{k<=(d-2)/2} (w^2 + (d-2k)^2).
double power_spectrum(double omega, int d);

struct IdentityResiduals {
  double first = 0.0;   // requires d >= 6 (uses sin^{d-4})
  double second = 0.0;  // d-independent
};
// |LHS - RHS| of the two sphere-integral identities at frequency omega.
IdentityResiduals check_identities(double omega, int d);

// Exponential-sum coefficients of the moving-average kernel
// g(s) = (d-2) e^{2s} (1 - e^{2s})^{(d-4)/2} = sum_m coef[m] e^{2(m+1)s}.
std::vector<double> g_coefficients(int d);

// S_t over a uniform grid via the truncated integral representation,
// driving two-sided Brownian motion sampled on the shared grid.  cutoff is
// the truncation depth of the s-integral.  d = 2 bypasses the quadrature and
// returns the driving Brownian motion itself.
RadialSample simulate_repr(const std::vector<double>& grid, int d,
                           double cutoff, RngSeed seed);

// Same computation driven by a caller-supplied 1-d path; the path grid must
// be uniform and cover [min(grid,0) - cutoff, max(grid,0)] with the same
// step as `grid`.  Used for injected-noise tests and the tilde process.
RadialSample simulate_repr_driven(const Path& driving,
                                  const std::vector<double>& grid, int d,
                                  double cutoff);

// S_t by sampling the stationary derivative vector and stepping it with the
// exact Gaussian transition; S is the cumulative integral of the first
// derivative column with S_0 = 0.  d = 2 bypasses to Brownian motion.
RadialSample simulate_sde(const std::vector<double>& grid, int d,
                          RngSeed seed);

}  // namespace lgf
