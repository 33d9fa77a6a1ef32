#include "lgf/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lgf {

namespace {

// First passage of vals[j] - slope * t_j below -b over t >= 0, linearly
// interpolated; NaN if no crossing.
double first_crossing(const std::vector<double>& times,
                      const std::vector<double>& vals, double slope,
                      double b) {
  double prev_t = 0.0, prev_d = 0.0;
  bool have_prev = false;
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (times[j] < 0.0) continue;
    const double drift = vals[j] - slope * times[j];
    if (drift <= -b) {
      if (!have_prev || prev_d <= -b) return times[j];
      const double w = (-b - prev_d) / (drift - prev_d);
      return prev_t + w * (times[j] - prev_t);
    }
    prev_t = times[j];
    prev_d = drift;
    have_prev = true;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// Linear interpolation of a sampled series at time t.
double interp_series(const std::vector<double>& times,
                     const std::vector<double>& vals, double t) {
  if (t < times.front() - 1e-9 || t > times.back() + 1e-9)
    throw std::invalid_argument("recenter: sample does not cover the window");
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t j = static_cast<std::size_t>(it - times.begin());
  j = std::min(std::max<std::size_t>(j, 1), times.size() - 1);
  const double t0 = times[j - 1], t1 = times[j];
  const double w = t1 > t0 ? std::clamp((t - t0) / (t1 - t0), 0.0, 1.0) : 0.0;
  return (1.0 - w) * vals[j - 1] + w * vals[j];
}

}  // namespace

double hitting_sigma(const RadialSample& sample, double q_minus_beta,
                     double b) {
  if (!(q_minus_beta > 0.0))
    throw std::domain_error("hitting_sigma: q_minus_beta <= 0");
  if (!(b > 0.0)) throw std::domain_error("hitting_sigma: b <= 0");
  const double sig = first_crossing(sample.times, sample.s, q_minus_beta, b);
  if (std::isnan(sig))
    throw std::runtime_error("hitting_sigma: no crossing within horizon");
  return sig;
}

ConeSample recenter(const RadialSample& sample, double sigma,
                    double window_lo, double window_hi, double b,
                    double drift_beta) {
  if (!(window_hi > window_lo))
    throw std::invalid_argument("recenter: empty window");
  const double dt = sample.times.size() > 1
                        ? sample.times[1] - sample.times[0]
                        : window_hi - window_lo;
  const double s_sigma = interp_series(sample.times, sample.s, sigma);
  ConeSample out;
  out.b = b;
  out.sigma_b = sigma;
  out.drift_beta = drift_beta;
  RadialSample& tr = out.trajectory;
  tr.method = sample.method;
  const std::size_t n =
      static_cast<std::size_t>(std::ceil((window_hi - window_lo) / dt - 1e-9)) + 1;
  const int ncols = static_cast<int>(sample.derivs.cols());
  tr.times.resize(n);
  tr.s.resize(n);
  tr.derivs.resize(n, ncols);
  std::vector<double> col(sample.times.size());
  for (std::size_t i = 0; i < n; ++i) {
    tr.times[i] = window_lo + i * dt;
    tr.s[i] =
        interp_series(sample.times, sample.s, tr.times[i] + sigma) - s_sigma;
  }
  for (int c = 0; c < ncols; ++c) {
    for (std::size_t j = 0; j < sample.times.size(); ++j)
      col[j] = sample.derivs(j, c);
    for (std::size_t i = 0; i < n; ++i)
      tr.derivs(i, c) = interp_series(sample.times, col, tr.times[i] + sigma);
  }
  return out;
}

Path tilde_driving(double q_minus_beta, double t_neg, double t_pos, double dt,
                   RngSeed seed, ConditionedStats* stats) {
  if (!(t_neg > 0.0) || !(t_pos > 0.0) || !(dt > 0.0))
    throw std::invalid_argument("tilde_driving: bad horizon/step");
  const std::size_t n_neg = static_cast<std::size_t>(std::lround(t_neg / dt));
  const std::size_t n_pos = static_cast<std::size_t>(std::lround(t_pos / dt));
  const std::vector<double> grid_neg = uniform_grid(0.0, n_neg * dt, n_neg);
  const std::vector<double> grid_pos = uniform_grid(0.0, n_pos * dt, n_pos);
  // negative side: B-tilde_{-u} = W_u conditioned above -q_minus_beta * u
  const Path w = sample_conditioned_above_line(q_minus_beta, n_neg * dt,
                                               grid_neg, seed.stream(0), stats);
  const Path f = sample_brownian(1, grid_pos, seed.stream(1));
  Path out;
  out.dim = 1;
  out.origin_index = n_neg;
  out.times.resize(n_neg + n_pos + 1);
  out.values.resize(n_neg + n_pos + 1);
  for (std::size_t i = 0; i <= n_neg; ++i) {
    out.times[i] = -static_cast<double>(n_neg - i) * dt;
    out.values[i] = w.at(n_neg - i);
  }
  for (std::size_t i = 1; i <= n_pos; ++i) {
    out.times[n_neg + i] = static_cast<double>(i) * dt;
    out.values[n_neg + i] = f.at(i);
  }
  return out;
}

RadialSample tilde_process(const Path& conditioned_path, int d,
                           double cutoff) {
  const std::vector<double>& dt_times = conditioned_path.times;
  if (dt_times.size() < 3)
    throw std::invalid_argument("tilde_process: path too short");
  const double start = dt_times.front() + cutoff;
  std::vector<double> grid;
  for (double t : dt_times)
    if (t >= start - 1e-9) grid.push_back(t);
  if (grid.size() < 2 || grid.front() > 1e-9)
    throw std::invalid_argument("tilde_process: path does not cover cutoff");
  if (d == 2) {
    RadialSample out;
    out.method = "brownian";
    out.times = grid;
    out.s.resize(grid.size());
    const std::size_t off = dt_times.size() - grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i)
      out.s[i] = conditioned_path.at(off + i);
    out.derivs.resize(grid.size(), 0);
    return out;
  }
  return simulate_repr_driven(conditioned_path, grid, d, cutoff);
}

std::pair<double, double> stopping_pair(const Path& b_tilde_path,
                                        const RadialSample& tilde_s,
                                        double q_minus_beta, double b) {
  std::vector<double> bvals(b_tilde_path.size());
  for (std::size_t i = 0; i < b_tilde_path.size(); ++i)
    bvals[i] = b_tilde_path.at(i);
  const double tau =
      first_crossing(b_tilde_path.times, bvals, q_minus_beta, b);
  const double sig = first_crossing(tilde_s.times, tilde_s.s, q_minus_beta, b);
  if (std::isnan(tau) || std::isnan(sig))
    throw std::runtime_error("stopping_pair: no crossing within horizon");
  return {tau, sig};
}

ConeSample sample_recentred(int d, double q_minus_beta, double b,
                            double window_lo, double window_hi, double dt,
                            RngSeed seed) {
  if (!(q_minus_beta > 0.0))
    throw std::domain_error("sample_recentred: q_minus_beta <= 0");
  double horizon = 2.0 * b / q_minus_beta + window_hi + 1.0;
  const double t0 = std::min(window_lo, 0.0) - dt;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const std::size_t n =
        static_cast<std::size_t>(std::ceil((horizon - t0) / dt));
    const std::vector<double> grid = uniform_grid(t0, t0 + n * dt, n);
    const RadialSample s = simulate_sde(grid, d, seed.stream(attempt));
    const double sig = first_crossing(s.times, s.s, q_minus_beta, b);
    if (!std::isnan(sig) && sig + window_hi <= s.times.back() &&
        sig + window_lo >= s.times.front())
      return recenter(s, sig, window_lo, window_hi, b);
    horizon *= 2.0;
  }
  throw std::runtime_error("sample_recentred: no crossing after max extensions");
}

double energy_distance(const std::vector<std::vector<double>>& xs,
                       const std::vector<std::vector<double>>& ys) {
  if (xs.empty() || ys.empty())
    throw std::invalid_argument("energy_distance: empty sample");
  const std::size_t k = xs[0].size();
  auto dist = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
  };
  double dxy = 0.0, dxx = 0.0, dyy = 0.0;
  for (const auto& x : xs)
    for (const auto& y : ys) dxy += dist(x, y);
  dxy /= static_cast<double>(xs.size()) * ys.size();
  for (const auto& a : xs)
    for (const auto& b : xs) dxx += dist(a, b);
  dxx /= static_cast<double>(xs.size()) * xs.size();
  for (const auto& a : ys)
    for (const auto& b : ys) dyy += dist(a, b);
  dyy /= static_cast<double>(ys.size()) * ys.size();
  return 2.0 * dxy - dxx - dyy;
}

std::vector<std::vector<double>> convergence_diagnostic(
    int d, double q_minus_beta, const std::vector<double>& b_list,
    double window_lo, double window_hi,
    const std::vector<double>& probe_times, int n_reps, RngSeed seed,
    double dt) {
  if (b_list.size() < 2)
    throw std::invalid_argument("convergence_diagnostic: need >= 2 levels");
  for (double s : probe_times)
    if (s < window_lo || s > window_hi)
      throw std::invalid_argument("convergence_diagnostic: probe outside window");
  std::vector<std::vector<std::vector<double>>> samples(b_list.size());
  for (std::size_t bi = 0; bi < b_list.size(); ++bi) {
    samples[bi].reserve(n_reps);
    for (int rep = 0; rep < n_reps; ++rep) {
      const ConeSample cs =
          sample_recentred(d, q_minus_beta, b_list[bi], window_lo, window_hi,
                           dt, seed.stream(bi * 1000003ULL + rep));
      std::vector<double> row(probe_times.size());
      for (std::size_t pi = 0; pi < probe_times.size(); ++pi)
        row[pi] = interp_series(cs.trajectory.times, cs.trajectory.s,
                                probe_times[pi]);
      samples[bi].push_back(std::move(row));
    }
  }
  std::vector<std::vector<double>> dmat(
      b_list.size(), std::vector<double>(b_list.size(), 0.0));
  for (std::size_t i = 0; i < b_list.size(); ++i)
    for (std::size_t j = i + 1; j < b_list.size(); ++j)
      dmat[i][j] = dmat[j][i] = energy_distance(samples[i], samples[j]);
  return dmat;
}

FieldGrid cone_field(const ConeSample& radial, const FieldGrid& sphere_part,
                     double beta) {
  const Lattice& lat = sphere_part.lattice;
  const RadialSample& tr = radial.trajectory;
  if (tr.times.empty()) throw std::invalid_argument("cone_field: empty radial");
  if (tr.times.size() > 1 &&
      tr.times[1] - tr.times[0] > std::log(2.0))
    throw std::invalid_argument("cone_field: radial grid coarser than shells");
  FieldGrid out = sphere_part;
  const double clamp = 0.5 * lat.dx();
  const int d = lat.d, n = lat.n;
  int idx[8];
  for (int a = 0; a < d; ++a) idx[a] = 0;
  std::size_t flat = 0;
  for (;;) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) {
      const double xa = lat.coord(idx[a]);
      r2 += xa * xa;
    }
    double s = -std::log(std::max(std::sqrt(r2), clamp));
    s = std::clamp(s, tr.times.front(), tr.times.back());
    out.values[flat] =
        sphere_part.values[flat] + interp_series(tr.times, tr.s, s) + beta * s;
    ++flat;
    int a = d - 1;
    while (a >= 0 && ++idx[a] >= n) idx[a--] = 0;
    if (a < 0) break;
  }
  out.has_singularity = beta != 0.0;
  out.sing_beta = beta;
  out.sing_center.assign(d, 0.0);
  return out;
}

}  // namespace lgf
