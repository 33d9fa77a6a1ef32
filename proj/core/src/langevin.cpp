#include "lgf/langevin.hpp"

#include <cmath>
#include <stdexcept>

#include "lgf/params.hpp"

namespace lgf {

namespace {

// Cholesky factor with a tiny ridge fallback for matrices that are PSD up
// to roundoff (e.g. Sigma(dt) at very small dt).
Eigen::MatrixXd safe_cholesky(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  const double ridge = 1e-14 * (1.0 + m.diagonal().maxCoeff());
  Eigen::MatrixXd shifted = m;
  shifted.diagonal().array() += ridge;
  llt.compute(shifted);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("covariance not positive semidefinite");
  return llt.matrixL();
}

}  // namespace

LangevinSystem companion_system(int d) {
  if (d < 4 || d % 2 != 0)
    throw std::domain_error("companion_system: d must be even and >= 4");
  LangevinSystem sys;
  sys.d = d;
  sys.p = (d - 2) / 2;
  const int p = sys.p;

  sys.lambdas.resize(p);
  for (int k = 1; k <= p; ++k) sys.lambdas(k - 1) = d - 2 * k;

  // monic polynomial prod_k (x + lambda_k), coefficients a_0 .. a_{p-1}
  std::vector<double> poly{1.0};
  for (int k = 0; k < p; ++k) {
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];                    // x * poly
      next[j] += sys.lambdas(k) * poly[j];       // lambda_k * poly
    }
    poly = std::move(next);
  }
  // poly[j] is the coefficient of x^j; poly[p] == 1
  sys.a_coeffs.resize(p);
  for (int j = 0; j < p; ++j) sys.a_coeffs(j) = poly[j];

  sys.A = Eigen::MatrixXd::Zero(p, p);
  for (int i = 0; i + 1 < p; ++i) sys.A(i, i + 1) = 1.0;
  for (int j = 0; j < p; ++j) sys.A(p - 1, j) = -sys.a_coeffs(j);

  sys.b_vec = Eigen::VectorXd::Zero(p);
  sys.b_vec(p - 1) = std::pow(2.0, d / 2.0 - 1.0) * gamma_fn(d / 2.0);

  sys.weights.resize(p);
  for (int k = 0; k < p; ++k) {
    double prod = 1.0;
    for (int j = 0; j < p; ++j)
      if (j != k) prod *= (sys.lambdas(j) - sys.lambdas(k));
    sys.weights(k) = 1.0 / prod;
  }

  // Vandermonde eigenvectors: column k is (1, mu_k, ..., mu_k^{p-1}) with
  // mu_k = -lambda_k.
  sys.V.resize(p, p);
  for (int k = 0; k < p; ++k) {
    double pw = 1.0;
    for (int i = 0; i < p; ++i) {
      sys.V(i, k) = pw;
      pw *= -sys.lambdas(k);
    }
  }
  sys.Vinv = sys.V.inverse();
  sys.w = sys.Vinv * sys.b_vec;
  return sys;
}

Eigen::MatrixXd exp_a(const LangevinSystem& sys, double t) {
  Eigen::VectorXd e(sys.p);
  for (int k = 0; k < sys.p; ++k) e(k) = std::exp(-sys.lambdas(k) * t);
  return sys.V * e.asDiagonal() * sys.Vinv;
}

Eigen::MatrixXd transition_cov(const LangevinSystem& sys, double t) {
  if (!(t >= 0.0)) throw std::domain_error("transition_cov: t < 0");
  const int p = sys.p;
  Eigen::MatrixXd m(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      const double rate = sys.lambdas(i) + sys.lambdas(j);
      m(i, j) = sys.w(i) * sys.w(j) * (1.0 - std::exp(-rate * t)) / rate;
    }
  Eigen::MatrixXd sigma = sys.V * m * sys.V.transpose();
  return 0.5 * (sigma + sigma.transpose());  // exact symmetry
}

Eigen::MatrixXd stationary_covariance(const LangevinSystem& sys) {
  const int p = sys.p;
  Eigen::MatrixXd m(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      m(i, j) = sys.w(i) * sys.w(j) / (sys.lambdas(i) + sys.lambdas(j));
  Eigen::MatrixXd sigma = sys.V * m * sys.V.transpose();
  return 0.5 * (sigma + sigma.transpose());
}

Eigen::VectorXd exact_step(const LangevinSystem& sys,
                           const Eigen::VectorXd& state, double dt,
                           CounterRng& rng) {
  if (!(dt > 0.0)) throw std::domain_error("exact_step: dt <= 0");
  Eigen::VectorXd mean = exp_a(sys, dt) * state;
  Eigen::MatrixXd l = safe_cholesky(transition_cov(sys, dt));
  Eigen::VectorXd z(sys.p);
  for (int i = 0; i < sys.p; ++i) z(i) = rng.normal();
  return mean + l * z;
}

Eigen::VectorXd exact_step(const LangevinSystem& sys,
                           const Eigen::VectorXd& state, double dt,
                           RngSeed seed) {
  CounterRng rng(seed);
  return exact_step(sys, state, dt, rng);
}

Eigen::VectorXd sample_stationary(const LangevinSystem& sys, CounterRng& rng) {
  Eigen::MatrixXd l = safe_cholesky(stationary_covariance(sys));
  Eigen::VectorXd z(sys.p);
  for (int i = 0; i < sys.p; ++i) z(i) = rng.normal();
  return l * z;
}

Eigen::MatrixXd augmented_exp(const LangevinSystem& sys, double t) {
  if (!(t >= 0.0)) throw std::domain_error("augmented_exp: t < 0");
  const int p = sys.p;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(p + 1, p + 1);
  out(0, 0) = 1.0;
  // int_0^t e^{As} ds = V diag((1 - e^{-lambda t}) / lambda) Vinv
  Eigen::VectorXd e(p);
  for (int k = 0; k < p; ++k)
    e(k) = (1.0 - std::exp(-sys.lambdas(k) * t)) / sys.lambdas(k);
  Eigen::MatrixXd intA = sys.V * e.asDiagonal() * sys.Vinv;
  out.block(0, 1, 1, p) = intA.row(0);
  out.block(1, 1, p, p) = exp_a(sys, t);
  return out;
}

Eigen::MatrixXd augmented_cov(const LangevinSystem& sys, double t) {
  if (!(t >= 0.0)) throw std::domain_error("augmented_cov: t < 0");
  const int p = sys.p;
  // Each component of e^{Abar s} bbar is alpha_{i,0} + sum_k alpha_{i,k}
  // exp(mu_k s) with mu_k = -lambda_k; entries of the covariance are exact
  // integrals of products of such exponential sums.
  Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(p + 1, p + 1);  // cols: 0, mu_1..mu_p
  for (int k = 0; k < p; ++k) {
    const double c = sys.V(0, k) * sys.w(k) / sys.lambdas(k);
    alpha(0, 0) += c;
    alpha(0, k + 1) = -c;
  }
  for (int i = 0; i < p; ++i)
    for (int k = 0; k < p; ++k) alpha(i + 1, k + 1) = sys.V(i, k) * sys.w(k);

  Eigen::VectorXd mu = Eigen::VectorXd::Zero(p + 1);
  for (int k = 0; k < p; ++k) mu(k + 1) = -sys.lambdas(k);

  Eigen::MatrixXd e(p + 1, p + 1);
  for (int k = 0; k <= p; ++k)
    for (int l = 0; l <= p; ++l) {
      const double rate = mu(k) + mu(l);
      e(k, l) = (rate == 0.0) ? t : (std::expm1(rate * t) / rate);
    }
  Eigen::MatrixXd sigma = alpha * e * alpha.transpose();
  return 0.5 * (sigma + sigma.transpose());
}

double kl_divergence(const LangevinSystem& sys, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& y, double t) {
  if (!(t > 0.0)) throw std::domain_error("kl_divergence: t <= 0");
  if (x.size() != sys.p + 1 || y.size() != sys.p + 1)
    throw std::invalid_argument("kl_divergence: states must be (p+1)-vectors");
  if (t < 1e-4)
    throw std::runtime_error(
        "kl_divergence: t < 1e-4, Sigma_t too ill-conditioned to invert");
  if (x == y) return 0.0;
  const Eigen::VectorXd delta = augmented_exp(sys, t) * (x - y);
  Eigen::LLT<Eigen::MatrixXd> llt(augmented_cov(sys, t));
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("kl_divergence: Sigma_t Cholesky failed");
  return 0.5 * delta.dot(llt.solve(delta));
}

double tv_bound(double kl) {
  if (kl < 0.0) throw std::domain_error("tv_bound: negative KL");
  return std::sqrt(kl / 2.0);
}

std::vector<std::pair<double, double>> mixing_profile(
    const LangevinSystem& sys, double radius,
    const std::vector<double>& t_grid, int n_pairs, RngSeed seed) {
  if (!(radius > 0.0)) throw std::domain_error("mixing_profile: radius <= 0");
  CounterRng rng(seed);
  const int n = sys.p + 1;
  // sample pairs uniformly in the ball B(0, radius) of augmented states
  std::vector<Eigen::VectorXd> xs, ys;
  auto draw_in_ball = [&]() {
    Eigen::VectorXd v(n);
    while (true) {
      for (int i = 0; i < n; ++i)
        v(i) = radius * (2.0 * rng.uniform01() - 1.0);
      if (v.norm() <= radius) return v;
    }
  };
  for (int i = 0; i < n_pairs; ++i) {
    xs.push_back(draw_in_ball());
    ys.push_back(draw_in_ball());
  }
  std::vector<std::pair<double, double>> curve;
  curve.reserve(t_grid.size());
  for (double t : t_grid) {
    double worst = 0.0;
    for (int i = 0; i < n_pairs; ++i)
      worst = std::max(worst, tv_bound(kl_divergence(sys, xs[i], ys[i], t)));
    curve.emplace_back(t, worst);
  }
  return curve;
}

}  // namespace lgf
