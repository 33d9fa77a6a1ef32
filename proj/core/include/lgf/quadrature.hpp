#pragma once

// Thin adaptive-quadrature wrapper over GSL (QAGS / QAGI).  Integrands with
// integrable endpoint singularities (the logarithmic covariance kernels) are
// in scope for QAGS; failures surface the achieved error estimate.

#include <functional>

namespace lgf {

struct QuadResult {
  double value = 0.0;
  double abserr = 0.0;
};

// Adaptive integration of f over [a, b].
QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, double epsabs = 1e-10, double epsrel = 1e-10);

// Adaptive integration of f over (-inf, inf).
QuadResult integrate_infinite(const std::function<double(double)>& f,
                              double epsabs = 1e-9, double epsrel = 1e-9);

}  // namespace lgf
