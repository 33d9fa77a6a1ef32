#include "lgf/lbm.hpp"

#include <gsl/gsl_sf_gamma.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lgf/params.hpp"
#include "lgf/stochastic.hpp"

namespace lgf {

namespace {

void mean_se(const std::vector<double>& v, double& m, double& se) {
  m = 0.0;
  for (double x : v) m += x;
  m /= v.size();
  double var = 0.0;
  for (double x : v) var += (x - m) * (x - m);
  se = v.size() > 1 ? std::sqrt(var / (v.size() - 1) / v.size()) : 0.0;
}

double norm2(const double* x, int d) {
  double s = 0.0;
  for (int a = 0; a < d; ++a) s += x[a] * x[a];
  return s;
}

// int_0^T p_t(0, y) dt at distance rho, by substitution u = rho^2 / (2t):
// (2 pi)^{-d/2} (rho^2/2)^{1-d/2} Gamma(d/2 - 1, rho^2 / (2T)).
double heat_time_integral(double rho, double T, int d) {
  const double x = rho * rho / (2.0 * T);
  return std::pow(2.0 * M_PI, -0.5 * d) *
         std::pow(rho * rho / 2.0, 1.0 - 0.5 * d) *
         gsl_sf_gamma_inc(0.5 * d - 1.0, x);
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo * std::pow(hi / lo, n > 1 ? static_cast<double>(i) / (n - 1) : 0.0);
  return g;
}

// Cells of B(0, r): centered coordinates and masses.
void ball_cells(const MeasureGrid& measure, double r,
                std::vector<double>& coords, std::vector<double>& masses) {
  const Lattice& lat = measure.lattice;
  const int d = lat.d, n = lat.n;
  const double dx = lat.dx();
  const double r2 = r * r;
  const int jr = static_cast<int>(std::floor(r / dx));
  int idx[8];
  const int lo = std::max(n / 2 - jr, 0), hi = std::min(n / 2 + jr, n - 1);
  for (int a = 0; a < d; ++a) idx[a] = lo;
  for (;;) {
    double dist2 = 0.0;
    std::size_t flat = 0;
    for (int a = 0; a < d; ++a) {
      const double xa = lat.coord(idx[a]);
      dist2 += xa * xa;
      flat = flat * n + idx[a];
    }
    if (dist2 <= r2) {
      for (int a = 0; a < d; ++a) coords.push_back(lat.coord(idx[a]));
      masses.push_back(measure.masses[flat]);
    }
    int a = d - 1;
    while (a >= 0 && ++idx[a] > hi) {
      idx[a] = lo;
      --a;
    }
    if (a < 0) break;
  }
}

}  // namespace

ClockSample clock_on_reg(const FieldGrid& reg_field, double alpha,
                         const Path& path, bool wrap) {
  if (reg_field.reg_epsilon <= 0.0)
    throw std::invalid_argument("clock: field not regularized");
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::domain_error("clock: alpha outside (0, 2)");
  const Lattice& lat = reg_field.lattice;
  if (path.dim != lat.d)
    throw std::invalid_argument("clock: path dimension mismatch");
  const double eps = reg_field.reg_epsilon;
  const double margin = 0.5 * lat.L - eps;
  const double pre = std::pow(eps, alpha * alpha / 2.0);

  ClockSample out;
  out.times = path.times;
  out.epsilon = eps;
  out.alpha = alpha;
  out.f_values.assign(path.size(), 0.0);
  for (std::size_t j = 1; j < path.size(); ++j) {
    const double* b = path.point(j - 1);
    if (!wrap) {
      for (int a = 0; a < lat.d; ++a)
        if (std::abs(b[a]) > margin) throw BoxExit(j - 1);
    }
    const double ds = path.times[j] - path.times[j - 1];
    out.f_values[j] =
        out.f_values[j - 1] + pre * std::exp(alpha * interpolate(reg_field, b)) * ds;
  }
  return out;
}

ClockSample clock(const FieldGrid& field, double alpha, const Path& path,
                  double epsilon) {
  return clock_on_reg(regularize(field, epsilon), alpha, path);
}

double inverse_clock(const ClockSample& ck, double t) {
  if (ck.f_values.empty() || t < 0.0 || t > ck.total())
    throw std::out_of_range("inverse_clock: t beyond clock range");
  const auto it = std::upper_bound(ck.f_values.begin(), ck.f_values.end(), t);
  if (it == ck.f_values.begin()) return ck.times.front();
  const std::size_t j = static_cast<std::size_t>(it - ck.f_values.begin());
  if (j >= ck.f_values.size()) return ck.times.back();
  const double f0 = ck.f_values[j - 1], f1 = ck.f_values[j];
  const double w = f1 > f0 ? (t - f0) / (f1 - f0) : 0.0;
  return ck.times[j - 1] + w * (ck.times[j] - ck.times[j - 1]);
}

Path lbm_path(const FieldGrid& field, double alpha, const Path& path,
              double epsilon, const std::vector<double>& out_grid) {
  const ClockSample ck = clock(field, alpha, path, epsilon);
  Path out;
  out.dim = path.dim;
  out.times = out_grid;
  out.values.resize(out_grid.size() * path.dim);
  for (std::size_t i = 0; i < out_grid.size(); ++i) {
    const double s = inverse_clock(ck, out_grid[i]);
    const auto it = std::upper_bound(path.times.begin(), path.times.end(), s);
    std::size_t j = static_cast<std::size_t>(it - path.times.begin());
    j = std::min(std::max<std::size_t>(j, 1), path.size() - 1);
    const double t0 = path.times[j - 1], t1 = path.times[j];
    const double w = t1 > t0 ? (s - t0) / (t1 - t0) : 0.0;
    for (int a = 0; a < path.dim; ++a)
      out.values[i * path.dim + a] =
          (1.0 - w) * path.point(j - 1)[a] + w * path.point(j)[a];
  }
  return out;
}

StatPair revuz_check(const FieldGrid& reg_field, double alpha, double T,
                     double R, int n_reps, RngSeed seed, double ds) {
  const Lattice& lat = reg_field.lattice;
  if (R >= 0.5 * lat.L)
    throw std::invalid_argument("revuz_check: ball leaves box");
  const int d = lat.d;
  const double eps = reg_field.reg_epsilon;
  if (eps <= 0.0) throw std::invalid_argument("revuz_check: field not regularized");
  const double pre = std::pow(eps, alpha * alpha / 2.0);

  // LHS: Monte Carlo over Brownian paths from the origin.
  const std::size_t n_steps = static_cast<std::size_t>(std::ceil(T / ds));
  const std::vector<double> grid = uniform_grid(0.0, T, n_steps);
  const double R2 = R * R;
  std::vector<double> lhs;
  lhs.reserve(n_reps);
  for (int rep = 0; rep < n_reps; ++rep) {
    const Path b = sample_brownian(d, grid, seed.stream(rep));
    double acc = 0.0;
    for (std::size_t j = 1; j < b.size(); ++j) {
      const double* p = b.point(j - 1);
      if (norm2(p, d) <= R2)
        acc += pre * std::exp(alpha * interpolate(reg_field, p)) *
               (b.times[j] - b.times[j - 1]);
    }
    lhs.push_back(acc);
  }

  // RHS: deterministic quadrature against the same realization's measure.
  const MeasureGrid mu = gmc_measure_from_reg(reg_field, alpha);
  std::vector<double> coords, masses;
  ball_cells(mu, R, coords, masses);
  const double clamp = 0.5 * lat.dx();
  double rhs = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const double rho =
        std::max(std::sqrt(norm2(&coords[i * d], d)), clamp);
    rhs += masses[i] * heat_time_integral(rho, T, d);
  }

  StatPair out;
  mean_se(lhs, out.mean_a, out.se_a);
  out.mean_b = rhs;
  out.se_b = 0.0;
  return out;
}

StatPair clock_scaling_check(int d, double gamma, double c, int n_reps,
                             RngSeed seed, double tau, int n, double L,
                             int n_steps) {
  if (!(c >= 1.0)) throw std::invalid_argument("clock_scaling_check: c < 1");
  const Params pm = Params::make(d, gamma);
  const double alpha = pm.alpha;
  Lattice lat{d, n, L};
  const double eps = 2.0 * c * lat.dx();
  const std::vector<double> grid_a =
      uniform_grid(0.0, c * c * tau, static_cast<std::size_t>(n_steps));
  const std::vector<double> grid_b =
      uniform_grid(0.0, tau, static_cast<std::size_t>(n_steps));
  const double adj = std::pow(c, alpha * pm.q_val);

  std::vector<double> va, vb, p(d);
  va.reserve(n_reps);
  vb.reserve(n_reps);
  for (int rep = 0; rep < n_reps; ++rep) {
    const FieldGrid h = synthesize_lgf(lat, seed.stream(2 * rep), false);
    const FieldGrid reg_a = regularize(h, eps);
    // h^c(x) = h(cx) on the same lattice (periodic interpolation)
    FieldGrid g = h;
    for (std::size_t flat = 0; flat < lat.size(); ++flat) {
      std::size_t rem = flat;
      for (int a = d - 1; a >= 0; --a) {
        p[a] = c * lat.coord(static_cast<int>(rem % lat.n));
        rem /= lat.n;
      }
      g.values[flat] = interpolate(h, p.data());
    }
    const FieldGrid reg_b = regularize(g, eps / c);

    const Path b = sample_brownian(d, grid_a, seed.stream(2 * rep + 1));
    Path bs;  // B'_u = B_{c^2 u} / c on grid_b
    bs.dim = d;
    bs.times = grid_b;
    bs.values = b.values;
    for (double& v : bs.values) v /= c;

    va.push_back(clock_on_reg(reg_a, alpha, b, true).total());
    vb.push_back(adj * clock_on_reg(reg_b, alpha, bs, true).total());
  }
  StatPair out;
  mean_se(va, out.mean_a, out.se_a);
  mean_se(vb, out.mean_b, out.se_b);
  return out;
}

SlopeFit moment_exponent(int d, double gamma, double beta, int n,
                         const std::vector<double>& t_list, double delta,
                         int n_reps, RngSeed seed, int n_side, double L,
                         int n_steps) {
  const Params pm = Params::make(d, gamma, beta);
  Lattice lat{d, n_side, L};
  const std::vector<double> origin(d, 0.0);
  std::vector<std::vector<double>> moments(t_list.size());
  for (int rep = 0; rep < n_reps; ++rep) {
    FieldGrid h = synthesize_lgf(lat, seed.stream(rep), false);
    if (beta != 0.0) h = add_log_singularity(h, beta, origin);
    FieldGrid reg;  // reused across t while eps stays on the 2 dx floor
    for (std::size_t ti = 0; ti < t_list.size(); ++ti) {
      const double t = t_list[ti];
      const double dt = t / n_steps;
      const double eps = std::max(2.0 * lat.dx(), std::sqrt(dt));
      const double radius = std::pow(t, 0.5 - delta);
      if (reg.values.empty() || reg.reg_epsilon != eps)
        reg = regularize(h, eps);
      const Path b = sample_brownian(
          d, uniform_grid(0.0, t, static_cast<std::size_t>(n_steps)),
          seed.stream(1000003ULL * (rep + 1) + ti));
      bool confined = true;
      const double rad2 = radius * radius;
      for (std::size_t j = 0; j < b.size() && confined; ++j)
        confined = norm2(b.point(j), d) <= rad2;
      moments[ti].push_back(
          confined ? std::pow(clock_on_reg(reg, pm.alpha, b, true).total(),
                              static_cast<double>(n))
                   : 0.0);
    }
  }
  std::vector<double> lx, ly;
  for (std::size_t ti = 0; ti < t_list.size(); ++ti) {
    double m = 0.0;
    std::size_t kept = 0;
    for (double v : moments[ti]) {
      m += v;
      kept += v > 0.0;
    }
    if (kept == 0) {
      std::fprintf(stderr,
                   "moment_exponent: all paths rejected at t = %g, dropped\n",
                   t_list[ti]);
      continue;
    }
    lx.push_back(std::log(t_list[ti]));
    ly.push_back(std::log(m / moments[ti].size()));
  }
  return fit_slope(lx, ly);
}

SpecDimResult spec_dim_estimate(int d, double gamma, double beta,
                                const std::vector<double>& chi_list,
                                double t_lo, double t_hi, int n_reps,
                                RngSeed seed, int n_side, double L, int n_t,
                                int n_steps) {
  const Params pm = Params::make(d, gamma, beta);
  if (pm.q_val <= std::sqrt(2.0 * d))
    throw std::domain_error("spec_dim_estimate: Q <= sqrt(2d) (supercritical)");
  if (chi_list.size() < 2 ||
      !std::is_sorted(chi_list.begin(), chi_list.end()))
    throw std::invalid_argument("spec_dim_estimate: chi_list must be sorted, >= 2");
  Lattice lat{d, n_side, L};
  const std::vector<double> origin(d, 0.0);
  const std::vector<double> t_grid = geometric_grid(t_lo, t_hi, n_t);

  std::vector<std::vector<double>> acc(
      t_grid.size(), std::vector<double>(chi_list.size(), 0.0));
  for (int rep = 0; rep < n_reps; ++rep) {
    FieldGrid h = synthesize_lgf(lat, seed.stream(rep), false);
    if (beta != 0.0) h = add_log_singularity(h, beta, origin);
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      const double t = t_grid[ti];
      const double dt = 0.5 * t / n_steps;
      const double eps = std::max(2.0 * lat.dx(), std::sqrt(dt));
      const FieldGrid reg = regularize(h, eps);
      const Path b = sample_brownian(
          d, uniform_grid(0.0, 0.5 * t, static_cast<std::size_t>(n_steps)),
          seed.stream(1000003ULL * (rep + 1) + ti));
      const double f = clock_on_reg(reg, pm.alpha, b, true).total();
      // bridge-to-Brownian absolute-continuity weight at the half time
      const double w =
          std::pow(2.0, 0.5 * d) *
          std::exp(-norm2(b.point(b.size() - 1), d) / t) * std::exp(-f);
      for (std::size_t ci = 0; ci < chi_list.size(); ++ci)
        acc[ti][ci] += std::pow(f, chi_list[ci]) * w;
    }
  }

  SpecDimResult out;
  out.chi_list = chi_list;
  out.t_grid = t_grid;
  out.slopes.resize(chi_list.size());
  std::vector<double> lx(t_grid.size());
  for (std::size_t ti = 0; ti < t_grid.size(); ++ti) lx[ti] = std::log(t_grid[ti]);
  for (std::size_t ci = 0; ci < chi_list.size(); ++ci) {
    std::vector<double> ly(t_grid.size());
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      const double I = acc[ti][ci] / n_reps *
                       std::pow(2.0 * M_PI * t_grid[ti], -0.5 * d);
      if (!(I > 0.0))
        throw std::runtime_error("spec_dim_estimate: vanishing integrand");
      ly[ti] = std::log(I);
    }
    out.slopes[ci] = fit_slope(lx, ly).slope;
  }
  // locate e(chi_bar) = -1 by linear interpolation
  for (std::size_t ci = 0; ci + 1 < chi_list.size(); ++ci) {
    const double e0 = out.slopes[ci], e1 = out.slopes[ci + 1];
    if ((e0 + 1.0) * (e1 + 1.0) <= 0.0 && e1 != e0) {
      const double w = (-1.0 - e0) / (e1 - e0);
      out.chi_bar = chi_list[ci] + w * (chi_list[ci + 1] - chi_list[ci]);
      out.d_spec = 2.0 * (out.chi_bar + 1.0);
      return out;
    }
  }
  throw std::runtime_error(
      "spec_dim_estimate: threshold e(chi) = -1 outside chi_list range");
}

double nested_green_oracle(const MeasureGrid& measure, int n, double r,
                           int d) {
  if (d < 3) throw std::domain_error("nested_green_oracle: d < 3");
  if (n < 1 || n > 3)
    throw std::invalid_argument("nested_green_oracle: n must be in {1, 2, 3}");
  std::vector<double> coords, masses;
  ball_cells(measure, r, coords, masses);
  const std::size_t nc = masses.size();
  const double cost = n == 1 ? static_cast<double>(nc)
                             : static_cast<double>(n - 1) * nc * nc;
  if (cost > 1e7)
    throw std::runtime_error("nested_green_oracle: cost guard exceeded");
  const double cg = gamma_fn(0.5 * d - 1.0) / (2.0 * std::pow(M_PI, 0.5 * d));
  const double clamp = 0.5 * measure.lattice.dx();
  auto green = [&](const double* x, const double* y) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) s += (x[a] - y[a]) * (x[a] - y[a]);
    return cg * std::pow(std::max(std::sqrt(s), clamp), 2.0 - d);
  };
  const std::vector<double> origin(d, 0.0);
  std::vector<double> v(nc);
  for (std::size_t i = 0; i < nc; ++i)
    v[i] = green(origin.data(), &coords[i * d]) * masses[i];
  std::vector<double> w(nc);
  for (int level = 2; level <= n; ++level) {
    for (std::size_t j = 0; j < nc; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < nc; ++i)
        s += v[i] * green(&coords[i * d], &coords[j * d]);
      w[j] = s * masses[j];
    }
    v.swap(w);
  }
  double total = 0.0;
  for (double x : v) total += x;
  return total;
}

RegionValues region_bound_check(const MeasureGrid& measure,
                                const std::vector<double>& x, double r,
                                int d) {
  if (d == 2) throw std::domain_error("region_bound_check: d = 2 unsupported");
  const Lattice& lat = measure.lattice;
  if (static_cast<int>(x.size()) != d)
    throw std::invalid_argument("region_bound_check: point dimension mismatch");
  std::vector<double> coords, masses;
  ball_cells(measure, r, coords, masses);
  const double a = std::sqrt(norm2(x.data(), d));
  const double clamp = 0.5 * lat.dx();
  RegionValues out;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const double* y = &coords[i * d];
    double dist2 = 0.0, y2 = 0.0;
    for (int aa = 0; aa < d; ++aa) {
      dist2 += (y[aa] - x[aa]) * (y[aa] - x[aa]);
      y2 += y[aa] * y[aa];
    }
    const double dist = std::sqrt(dist2), ry = std::sqrt(y2);
    const double contrib =
        masses[i] * std::pow(std::max(dist, clamp), 2.0 - d);
    out.direct += contrib;
    int region;
    if (dist < 0.5 * a)
      region = 0;  // near x
    else if (ry < 0.5 * a)
      region = 1;  // near the origin
    else if (ry <= 2.0 * a)
      region = 2;  // intermediate shell
    else
      region = 3;  // remainder of B(0, r)
    out.region[region] += contrib;
  }
  out.total = out.region[0] + out.region[1] + out.region[2] + out.region[3];
  return out;
}

}  // namespace lgf
