#pragma once

// Parameter algebra shared by every module: the quantum parameter
// Q = d/gamma + gamma/2, the time-change exponent alpha solving
// 2/alpha + alpha/2 = Q, the critical threshold alpha_c = sqrt(2d) -
// sqrt(2d-4), and the closed-form spectral dimension.

namespace lgf {

// Gamma function; exact recursion for half-integer arguments (which is all
// the closed-form constants here ever use), std::tgamma otherwise.
double gamma_fn(double x);

// Q = d/gamma + gamma/2.  Domain: d >= 2, 0 < gamma <= sqrt(2d).
double derive_q(int d, double gamma);

// The root in (0, 2) of 2/alpha + alpha/2 = q, i.e. q - sqrt(q^2 - 4).
// Domain: q > 2 (no subcritical exponent at or past the boundary).
double alpha_of_q(double q);

// alpha_c = sqrt(2d) - sqrt(2d - 4).  Domain: d >= 2.
double alpha_critical(int d);

// c(d) = Gamma(d/2) / (2 sqrt(pi) Gamma((d-1)/2)), the spherical constant
// in front of every covariance quadrature.  Domain: d >= 2.
double c_of_d(int d);

// d_spec = 2 + 2(d-2) / (2 + alpha^2/2 - alpha*beta).
// Domain: denominator > 0 (otherwise the defining potential diverges).
double spectral_dimension_formula(int d, double alpha, double beta);

// chi_bar = (d-2) / (2 + alpha^2/2 - alpha*beta); d_spec = 2 (chi_bar + 1).
double chi_bar_formula(int d, double alpha, double beta);

// Validated parameter bundle.  Construction is eager: downstream modules
// assume a valid Params and never re-check.
struct Params {
  int d = 2;            // ambient dimension, >= 2
  double gamma = 1.0;   // GMC coupling, in (0, sqrt(2d))
  double beta = 0.0;    // log-singularity weight, < q_val
  double q_val = 0.0;   // d/gamma + gamma/2
  double alpha = 0.0;   // LBM exponent in (0, 2)
  double alpha_c = 0.0; // critical exponent sqrt(2d) - sqrt(2d-4)
  int c_d = 0;          // (d-2)/2, meaningful for even d only
  bool even_only = false; // true iff d is even (spherical/cone modules may run)

  static Params make(int d, double gamma, double beta = 0.0);
};

}  // namespace lgf
