#include "lgf/sphavg.hpp"

#include <cmath>
#include <stdexcept>

#include "lgf/langevin.hpp"
#include "lgf/params.hpp"
#include "lgf/quadrature.hpp"
#include "lgf/stochastic.hpp"

namespace lgf {

namespace {

constexpr double kQuadTol = 1e-11;

double sin_pow(double theta, int k) {
  return std::pow(std::sin(theta), static_cast<double>(k));
}

// Uniform step of a grid; throws if the grid is not uniform.
double uniform_step(const std::vector<double>& grid, const char* who) {
  if (grid.size() < 2) throw std::invalid_argument(std::string(who) + ": grid too short");
  const double dt = grid[1] - grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double step = grid[i] - grid[i - 1];
    if (!(step > 0.0) || std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
      throw std::invalid_argument(std::string(who) + ": grid must be uniform");
  }
  return dt;
}

// Brownian bypass shared by both simulators in d = 2.
RadialSample brownian_radial(const std::vector<double>& grid, RngSeed seed) {
  const double dt = uniform_step(grid, "sphavg d=2");
  const double lo = std::min(grid.front(), 0.0);
  const double hi = std::max(grid.back(), 0.0);
  // aligned two-sided grid containing 0
  const long n_lo = std::lround(std::ceil(-lo / dt - 1e-9));
  const long n_hi = std::lround(std::ceil(hi / dt - 1e-9));
  std::vector<double> tg(n_lo + n_hi + 1);
  for (long i = 0; i <= n_lo + n_hi; ++i) tg[i] = (i - n_lo) * dt;
  Path b = sample_two_sided(tg, seed);
  RadialSample out;
  out.method = "brownian";
  out.times = grid;
  out.s.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const long idx = n_lo + std::lround(grid[j] / dt);
    out.s[j] = b.values[idx];
  }
  out.derivs.resize(grid.size(), 0);
  return out;
}

}  // namespace

double kernel_diag(double r1, double r2, int d) {
  if (!(r1 > 0.0) || !(r2 > 0.0))
    throw std::domain_error("kernel_diag: radii must be positive");
  if (d < 2) throw std::domain_error("kernel_diag: d < 2");
  const double c = c_of_d(d);
  // r1^2 + r2^2 - 2 r1 r2 cos t = (r1 - r2)^2 + 4 r1 r2 sin^2(t/2), which is
  // stable near the logarithmic endpoint singularity at r1 = r2, t = 0.
  const double dd = (r1 - r2) * (r1 - r2);
  const double pp = 4.0 * r1 * r2;
  auto f = [&](double t) {
    const double sh = std::sin(0.5 * t);
    return std::log(dd + pp * sh * sh) * sin_pow(t, d - 2);
  };
  return -c * integrate(f, 0.0, M_PI, kQuadTol, kQuadTol).value;
}

double variance_increment(double t, int d) {
  if (d < 2) throw std::domain_error("variance_increment: d < 2");
  const double at = std::abs(t);
  if (at == 0.0) return 0.0;
  const double c = c_of_d(d);
  const double q = std::exp(-at);
  const double one_minus_q2 = (1.0 - q) * (1.0 - q);
  auto f = [&](double th) {
    const double sh2 = std::pow(std::sin(0.5 * th), 2);
    return (std::log(one_minus_q2 + 4.0 * q * sh2) - std::log(4.0 * sh2)) *
           sin_pow(th, d - 2);
  };
  return at + 2.0 * c * integrate(f, 0.0, M_PI, kQuadTol, kQuadTol).value;
}

double deriv_autocov(double u, int d) {
  if (d < 4 || d % 2 != 0)
    throw std::domain_error("deriv_autocov: d must be even and >= 4");
  const double au = std::abs(u);
  const double c = c_of_d(d);
  if (au < 1e-12) {
    // limit integrand: sin^{d-2} t / (1 - cos t) = sin^{d-2} t / (2 sin^2(t/2))
    auto f = [&](double th) {
      const double sh = std::sin(0.5 * th);
      return sin_pow(th, d - 2) / (2.0 * sh * sh);
    };
    return c * integrate(f, 0.0, M_PI, kQuadTol, kQuadTol).value;
  }
  const double ch = std::cosh(au);
  auto f = [&](double th) {
    const double ct = std::cos(th);
    const double den = ct - ch;
    return (1.0 - ct * ch) / (den * den) * sin_pow(th, d - 2);
  };
  return c * integrate(f, 0.0, M_PI, kQuadTol, kQuadTol).value;
}

double power_spectrum(double omega, int d) {
  if (d < 4 || d % 2 != 0)
    throw std::domain_error("power_spectrum: d must be even and >= 4");
  const double g = gamma_fn(d / 2.0);
  double den = 1.0;
  for (int k = 1; k <= (d - 2) / 2; ++k) {
    const double pole = d - 2 * k;
    den *= omega * omega + pole * pole;
  }
  return std::pow(2.0, d - 2) * g * g / den /
         std::sqrt(2.0 * M_PI);
}

IdentityResiduals check_identities(double omega, int d) {
  auto ee = [&](double th) {
    return std::exp((th - M_PI) * omega) + std::exp(-(th - M_PI) * omega);
  };
  IdentityResiduals out;
  if (d >= 6) {
    auto f_lhs = [&](double th) { return ee(th) * sin_pow(th, d - 2); };
    auto f_rhs = [&](double th) { return ee(th) * sin_pow(th, d - 4); };
    const double lhs = integrate(f_lhs, 0.0, M_PI, kQuadTol, kQuadTol).value;
    const double rhs =
        static_cast<double>((d - 2) * (d - 3)) /
        (omega * omega + (d - 2) * (d - 2)) *
        integrate(f_rhs, 0.0, M_PI, kQuadTol, kQuadTol).value;
    out.first = std::abs(lhs - rhs);
  } else {
    throw std::domain_error("check_identities: first identity needs d >= 6");
  }
  auto f2 = [&](double th) { return ee(th) * sin_pow(th, 2); };
  const double lhs2 = integrate(f2, 0.0, M_PI, kQuadTol, kQuadTol).value;
  const double rhs2 = 2.0 * (std::exp(M_PI * omega) - std::exp(-M_PI * omega)) /
                      (omega * (omega * omega + 4.0));
  out.second = std::abs(lhs2 - rhs2);
  return out;
}

std::vector<double> g_coefficients(int d) {
  if (d < 4 || d % 2 != 0)
    throw std::domain_error("g_coefficients: d must be even and >= 4");
  const int q = (d - 4) / 2;
  std::vector<double> coef(q + 1);
  double binom = 1.0;
  for (int m = 0; m <= q; ++m) {
    coef[m] = (d - 2) * ((m % 2 == 0) ? binom : -binom);
    binom = binom * (q - m) / (m + 1);
  }
  return coef;
}

RadialSample simulate_repr_driven(const Path& driving,
                                  const std::vector<double>& grid, int d,
                                  double cutoff) {
  if (d == 2) throw std::invalid_argument("simulate_repr_driven: d = 2 has no kernel");
  if (d < 4 || d % 2 != 0)
    throw std::domain_error("simulate_repr_driven: d must be even and >= 4");
  if (!(cutoff > 0.0)) throw std::domain_error("simulate_repr_driven: cutoff <= 0");
  const double dt = uniform_step(grid, "simulate_repr");
  const double dt_b = uniform_step(driving.times, "simulate_repr driving");
  if (std::abs(dt - dt_b) > 1e-9 * dt)
    throw std::invalid_argument("simulate_repr: driving grid step mismatch");
  const double t0d = driving.times.front();
  auto idx = [&](double t) {
    const double x = (t - t0d) / dt;
    const long i = std::lround(x);
    if (std::abs(x - static_cast<double>(i)) > 1e-6)
      throw std::invalid_argument("simulate_repr: grids not aligned");
    if (i < 0 || static_cast<std::size_t>(i) >= driving.size())
      throw std::invalid_argument("simulate_repr: driving path does not cover grid");
    return static_cast<std::size_t>(i);
  };
  const long m = std::lround(std::ceil(cutoff / dt - 1e-9));
  if (m < 2) throw std::invalid_argument("simulate_repr: cutoff under-resolved");
  const int c_d = (d - 2) / 2;
  const std::vector<double> coef = g_coefficients(d);

  // kernel and derivative tables on s_i = (i - m) dt, i = 0..m
  std::vector<std::vector<double>> ker(c_d + 1, std::vector<double>(m + 1));
  for (long i = 0; i <= m; ++i) {
    const double s = (i - m) * dt;
    for (int r = 0; r <= c_d; ++r) {
      double v = 0.0;
      for (std::size_t mm = 0; mm < coef.size(); ++mm) {
        const double rate = 2.0 * (mm + 1);
        v += coef[mm] * std::pow(rate, r) * std::exp(rate * s);
      }
      ker[r][i] = v;
    }
  }
  // g^{(c_d - 1)}(0), boundary coefficient of the top derivative
  double g_top0 = 0.0;
  for (std::size_t mm = 0; mm < coef.size(); ++mm)
    g_top0 += coef[mm] * std::pow(2.0 * (mm + 1), c_d - 1);

  std::vector<double> wgt(m + 1, dt);
  wgt.front() = wgt.back() = 0.5 * dt;

  const std::size_t b0 = idx(0.0) - m;  // driving index of s_0 at t = 0
  RadialSample out;
  out.method = "representation";
  out.times = grid;
  out.s.assign(grid.size(), 0.0);
  out.derivs.resize(grid.size(), c_d);

  double sup_b = 0.0;
  for (double v : driving.values) sup_b = std::max(sup_b, std::abs(v));
  out.trunc_error = std::exp(-2.0 * m * dt) * (d - 2) / 2.0 * sup_b;

  const double* bv = driving.values.data();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const std::size_t bj = idx(grid[j]) - m;
    double acc = 0.0;
    for (long i = 0; i <= m; ++i)
      acc += wgt[i] * ker[0][i] * (bv[bj + i] - bv[b0 + i]);
    out.s[j] = acc;
    for (int r = 1; r <= c_d; ++r) {
      const double sign = (r % 2 == 0) ? 1.0 : -1.0;
      double da = 0.0;
      for (long i = 0; i <= m; ++i) da += wgt[i] * ker[r][i] * bv[bj + i];
      da *= sign;
      if (r == c_d) da += -sign * g_top0 * bv[idx(grid[j])];
      out.derivs(j, r - 1) = da;
    }
  }
  return out;
}

RadialSample simulate_repr(const std::vector<double>& grid, int d,
                           double cutoff, RngSeed seed) {
  if (d == 2) return brownian_radial(grid, seed);
  const double dt = uniform_step(grid, "simulate_repr");
  const double lo = std::min(grid.front(), 0.0);
  const double hi = std::max(grid.back(), 0.0);
  const long m = std::lround(std::ceil(cutoff / dt - 1e-9));
  const long n_lo = std::lround(std::ceil((-lo) / dt - 1e-9)) + m;
  const long n_hi = std::lround(std::ceil(hi / dt - 1e-9));
  std::vector<double> tg(n_lo + n_hi + 1);
  for (long i = 0; i <= n_lo + n_hi; ++i) tg[i] = (i - n_lo) * dt;
  Path b = sample_two_sided(tg, seed);
  return simulate_repr_driven(b, grid, d, cutoff);
}

RadialSample simulate_sde(const std::vector<double>& grid, int d,
                          RngSeed seed) {
  if (d == 2) return brownian_radial(grid, seed);
  if (d < 4 || d % 2 != 0)
    throw std::domain_error("simulate_sde: d must be even and >= 4");
  const double dt = uniform_step(grid, "simulate_sde");
  const LangevinSystem sys = companion_system(d);
  CounterRng rng(seed);

  const Eigen::MatrixXd step_mean = exp_a(sys, dt);
  Eigen::LLT<Eigen::MatrixXd> llt(transition_cov(sys, dt));
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("simulate_sde: transition covariance not PD");
  const Eigen::MatrixXd step_chol = llt.matrixL();

  RadialSample out;
  out.method = "sde";
  out.times = grid;
  out.s.assign(grid.size(), 0.0);
  out.derivs.resize(grid.size(), sys.p);

  Eigen::VectorXd state = sample_stationary(sys, rng);
  Eigen::VectorXd z(sys.p);
  out.derivs.row(0) = state.transpose();
  for (std::size_t j = 1; j < grid.size(); ++j) {
    for (int i = 0; i < sys.p; ++i) z(i) = rng.normal();
    state = step_mean * state + step_chol * z;
    out.derivs.row(j) = state.transpose();
    // trapezoidal integral of the first derivative column
    out.s[j] = out.s[j - 1] +
               0.5 * dt * (out.derivs(j - 1, 0) + out.derivs(j, 0));
  }
  return out;
}

}  // namespace lgf
