#include "lgf/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lgf {

namespace {
constexpr double kSqrtPi = 1.7724538509055160272981674833411;
}

double gamma_fn(double x) {
  if (x <= 0.0) throw std::domain_error("gamma_fn: nonpositive argument");
  const double twice = 2.0 * x;
  const double twice_round = std::round(twice);
  if (std::abs(twice - twice_round) < 1e-12) {
    // half-integer (or integer) argument: exact recursion from Gamma(1/2)
    // or Gamma(1)
    long n = static_cast<long>(twice_round);
    double acc = (n % 2 == 0) ? 1.0 : kSqrtPi;  // Gamma(1) or Gamma(1/2)
    double arg = (n % 2 == 0) ? 1.0 : 0.5;
    while (arg + 0.5 <= x) {
      acc *= arg;
      arg += 1.0;
    }
    return acc;
  }
  return std::tgamma(x);
}

double derive_q(int d, double gamma) {
  if (d < 2) throw std::domain_error("derive_q: d < 2");
  const double gmax = std::sqrt(2.0 * d);
  if (!(gamma > 0.0) || gamma > gmax)
    throw std::domain_error("derive_q: gamma outside (0, sqrt(2d)]");
  return static_cast<double>(d) / gamma + gamma / 2.0;
}

double alpha_of_q(double q) {
  if (!(q > 2.0))
    throw std::domain_error(
        "alpha_of_q: q <= 2 (no subcritical LBM exponent)");
  // q - sqrt(q^2 - 4) rationalized: cancellation-free for large q
  return 4.0 / (q + std::sqrt(q * q - 4.0));
}

double alpha_critical(int d) {
  if (d < 2) throw std::domain_error("alpha_critical: d < 2");
  return std::sqrt(2.0 * d) - std::sqrt(2.0 * d - 4.0);
}

double c_of_d(int d) {
  if (d < 2) throw std::domain_error("c_of_d: d < 2");
  return gamma_fn(d / 2.0) / (2.0 * kSqrtPi * gamma_fn((d - 1) / 2.0));
}

double spectral_dimension_formula(int d, double alpha, double beta) {
  const double denom = 2.0 + alpha * alpha / 2.0 - alpha * beta;
  if (!(denom > 0.0))
    throw std::domain_error(
        "spectral_dimension_formula: 2 + alpha^2/2 - alpha*beta <= 0 "
        "(divergent potential regime)");
  return 2.0 + 2.0 * (d - 2) / denom;
}

double chi_bar_formula(int d, double alpha, double beta) {
  const double denom = 2.0 + alpha * alpha / 2.0 - alpha * beta;
  if (!(denom > 0.0)) throw std::domain_error("chi_bar_formula: denominator <= 0");
  return (d - 2) / denom;
}

Params Params::make(int d, double gamma, double beta) {
  if (d < 2) throw std::domain_error("Params: d < 2");
  if (!(gamma > 0.0) || !(gamma < std::sqrt(2.0 * d)))
    throw std::domain_error("Params: gamma outside (0, sqrt(2d))");
  Params p;
  p.d = d;
  p.gamma = gamma;
  p.q_val = derive_q(d, gamma);
  p.alpha = alpha_of_q(p.q_val);
  p.alpha_c = alpha_critical(d);
  p.even_only = (d % 2 == 0);
  p.c_d = p.even_only ? (d - 2) / 2 : 0;
  if (!(beta < p.q_val))
    throw std::domain_error("Params: beta >= Q (= " +
                            std::to_string(p.q_val) + ")");
  p.beta = beta;
  return p;
}

}  // namespace lgf
