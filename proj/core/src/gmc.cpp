#include "lgf/gmc.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "lgf/params.hpp"

namespace lgf {

namespace {

void validate_lattice(const Lattice& lat) {
  if (lat.d < 2) throw std::invalid_argument("lattice: d < 2");
  if (lat.n < 4 || (lat.n & (lat.n - 1)) != 0)
    throw std::invalid_argument("lattice: n must be a power of two >= 4");
  if (!(lat.L > 0.0)) throw std::invalid_argument("lattice: L <= 0");
}

// surface area of the unit (d-1)-sphere
double sphere_area(int d) {
  return 2.0 * std::pow(M_PI, d / 2.0) / gamma_fn(d / 2.0);
}

int point_count(int d, double r_over_dx) {
  double m = 8.0 * std::pow(r_over_dx + 1.0, d - 1);
  m = std::min(std::max(m, 32.0), 100000.0);
  int mi = static_cast<int>(std::ceil(m));
  return mi + (mi % 2);
}

// Deposit weight w at point x by periodic multilinear rasterization.
void raster_point(std::vector<double>& grid, const Lattice& lat,
                  const double* x, double w) {
  const int d = lat.d, n = lat.n;
  const double dx = lat.dx();
  int base[8];
  double frac[8];
  for (int a = 0; a < d; ++a) {
    const double u = x[a] / dx + n / 2;
    const double fl = std::floor(u);
    base[a] = static_cast<int>(fl);
    frac[a] = u - fl;
  }
  for (int corner = 0; corner < (1 << d); ++corner) {
    double wt = w;
    std::size_t flat = 0;
    for (int a = 0; a < d; ++a) {
      const int bit = (corner >> a) & 1;
      wt *= bit ? frac[a] : 1.0 - frac[a];
      int j = base[a] + bit;
      j %= n;
      if (j < 0) j += n;
      flat = flat * n + j;
    }
    grid[flat] += wt;
  }
}

// In-place forward r2c transform; returns the complex buffer (caller frees).
fftw_complex* fft_forward(const Lattice& lat, const std::vector<double>& in) {
  const int d = lat.d, n = lat.n;
  std::vector<int> dims(d, n);
  const std::size_t nc = (lat.size() / n) * (n / 2 + 1);
  double* re = fftw_alloc_real(lat.size());
  fftw_complex* cx = fftw_alloc_complex(nc);
  if (!re || !cx) throw std::bad_alloc();
  std::memcpy(re, in.data(), lat.size() * sizeof(double));
  fftw_plan p = fftw_plan_dft_r2c(d, dims.data(), re, cx, FFTW_ESTIMATE);
  fftw_execute(p);
  fftw_destroy_plan(p);
  fftw_free(re);
  return cx;
}

std::vector<double> fft_backward(const Lattice& lat, fftw_complex* cx) {
  const int d = lat.d, n = lat.n;
  std::vector<int> dims(d, n);
  double* re = fftw_alloc_real(lat.size());
  if (!re) throw std::bad_alloc();
  fftw_plan p = fftw_plan_dft_c2r(d, dims.data(), cx, re, FFTW_ESTIMATE);
  fftw_execute(p);
  fftw_destroy_plan(p);
  std::vector<double> out(re, re + lat.size());
  fftw_free(re);
  return out;
}

// Odometer over the index box [lo, hi] (inclusive); calls f(idx).
template <typename F>
void for_box(int d, const int* lo, const int* hi, F&& f) {
  int idx[8];
  for (int a = 0; a < d; ++a) {
    if (lo[a] > hi[a]) return;
    idx[a] = lo[a];
  }
  for (;;) {
    f(idx);
    int a = d - 1;
    while (a >= 0 && ++idx[a] > hi[a]) {
      idx[a] = lo[a];
      --a;
    }
    if (a < 0) return;
  }
}

double trimmed_mean(std::vector<double> v, double trim) {
  std::sort(v.begin(), v.end());
  const std::size_t k = static_cast<std::size_t>(trim * v.size());
  if (2 * k >= v.size()) throw std::invalid_argument("trimmed_mean: overtrim");
  double s = 0.0;
  for (std::size_t i = k; i < v.size() - k; ++i) s += v[i];
  return s / (v.size() - 2 * k);
}

void check_point_dim(const std::vector<double>& x, int d, const char* who) {
  if (static_cast<int>(x.size()) != d)
    throw std::invalid_argument(std::string(who) + ": point dimension mismatch");
}

}  // namespace

std::size_t Lattice::size() const {
  std::size_t s = 1;
  for (int a = 0; a < d; ++a) s *= static_cast<std::size_t>(n);
  return s;
}

double MeasureGrid::total() const {
  double s = 0.0;
  for (double m : masses) s += m;
  return s;
}

std::vector<double> sphere_points(int d, int m) {
  if (d < 2) throw std::invalid_argument("sphere_points: d < 2");
  m += m % 2;
  m = std::max(m, 2);
  std::vector<double> pts(static_cast<std::size_t>(m) * d, 0.0);
  if (d == 2) {
    for (int i = 0; i < m; ++i) {
      const double th = 2.0 * M_PI * i / m;
      pts[2 * i] = std::cos(th);
      pts[2 * i + 1] = std::sin(th);
    }
    return pts;
  }
  const int h = m / 2;
  if (d == 3) {
    // Fibonacci lattice plus antipodes keeps the set exactly symmetric.
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < h; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / h;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double th = golden * i;
      double* p = &pts[3 * static_cast<std::size_t>(i)];
      p[0] = rho * std::cos(th);
      p[1] = rho * std::sin(th);
      p[2] = z;
      double* q = &pts[3 * static_cast<std::size_t>(h + i)];
      for (int a = 0; a < 3; ++a) q[a] = -p[a];
    }
    return pts;
  }
  // d >= 4: fixed-seed normalized Gaussians plus antipodes.
  CounterRng rng(RngSeed{0x5ca1ab1eULL, static_cast<std::uint64_t>(d)});
  for (int i = 0; i < h; ++i) {
    double* p = &pts[static_cast<std::size_t>(i) * d];
    double nrm = 0.0;
    do {
      nrm = 0.0;
      for (int a = 0; a < d; ++a) {
        p[a] = rng.normal();
        nrm += p[a] * p[a];
      }
    } while (nrm < 1e-12);
    nrm = std::sqrt(nrm);
    double* q = &pts[static_cast<std::size_t>(h + i) * d];
    for (int a = 0; a < d; ++a) {
      p[a] /= nrm;
      q[a] = -p[a];
    }
  }
  return pts;
}

double interpolate(const FieldGrid& field, const double* x) {
  const int d = field.lattice.d, n = field.lattice.n;
  const double dx = field.lattice.dx();
  int base[8];
  double frac[8];
  for (int a = 0; a < d; ++a) {
    const double u = x[a] / dx + n / 2;
    const double fl = std::floor(u);
    base[a] = static_cast<int>(fl);
    frac[a] = u - fl;
  }
  double acc = 0.0;
  for (int corner = 0; corner < (1 << d); ++corner) {
    double wt = 1.0;
    std::size_t flat = 0;
    for (int a = 0; a < d; ++a) {
      const int bit = (corner >> a) & 1;
      wt *= bit ? frac[a] : 1.0 - frac[a];
      int j = (base[a] + bit) % n;
      if (j < 0) j += n;
      flat = flat * n + j;
    }
    acc += wt * field.values[flat];
  }
  return acc;
}

FieldGrid synthesize_lgf(const Lattice& lattice, RngSeed seed, bool pin) {
  validate_lattice(lattice);
  const int d = lattice.d, n = lattice.n;
  if (d > 8) throw std::invalid_argument("synthesize_lgf: d > 8 unsupported");
  const std::size_t nsites = lattice.size();
  const double area = sphere_area(d);

  std::vector<double> noise(nsites);
  CounterRng rng(seed);
  for (double& v : noise) v = rng.normal();

  fftw_complex* cx = fft_forward(lattice, noise);
  const std::size_t nc_last = static_cast<std::size_t>(n / 2 + 1);
  const std::size_t nmodes = (nsites / n) * nc_last;
  for (std::size_t flat = 0; flat < nmodes; ++flat) {
    // decode wrapped integer wavevector
    std::size_t rem = flat;
    long k2 = 0;
    const long klast = static_cast<long>(rem % nc_last);
    k2 += klast * klast;
    rem /= nc_last;
    for (int a = d - 2; a >= 0; --a) {
      long j = static_cast<long>(rem % n);
      rem /= n;
      if (j > n / 2) j -= n;
      k2 += j * j;
    }
    double mult = 0.0;
    if (k2 > 0)
      mult = std::sqrt(std::pow(static_cast<double>(k2), -0.5 * d) / area /
                       static_cast<double>(nsites));
    cx[flat][0] *= mult;
    cx[flat][1] *= mult;
  }
  FieldGrid out;
  out.lattice = lattice;
  out.values = fft_backward(lattice, cx);
  fftw_free(cx);
  out.seed_tag = seed;
  if (pin) {
    if (lattice.L <= 2.0 + 4.0 * lattice.dx())
      throw std::invalid_argument("synthesize_lgf: box too small to pin at radius 1");
    const double h1 =
        spherical_average(out, std::vector<double>(d, 0.0), 1.0);
    for (double& v : out.values) v -= h1;
    out.pinned = true;
  }
  return out;
}

double spherical_average(const FieldGrid& field, const std::vector<double>& x,
                         double r) {
  const Lattice& lat = field.lattice;
  check_point_dim(x, lat.d, "spherical_average");
  const double dx = lat.dx();
  if (r < 2.0 * dx)
    throw std::invalid_argument("spherical_average: r below 2 dx resolution");
  if (r >= 0.5 * lat.L)
    throw std::invalid_argument("spherical_average: sphere leaves box");
  const int m = point_count(lat.d, r / dx);
  const std::vector<double> pts = sphere_points(lat.d, m);
  double acc = 0.0;
  double p[8];
  for (int i = 0; i < m; ++i) {
    for (int a = 0; a < lat.d; ++a) p[a] = x[a] + r * pts[i * lat.d + a];
    acc += interpolate(field, p);
  }
  return acc / m;
}

FieldGrid regularize(const FieldGrid& field, double eps) {
  const Lattice& lat = field.lattice;
  const double dx = lat.dx();
  if (eps < 2.0 * dx)
    throw std::invalid_argument("regularize: eps below 2 dx floor");
  if (eps >= 0.5 * lat.L)
    throw std::invalid_argument("regularize: eps sphere leaves box");
  const int m = point_count(lat.d, eps / dx);
  const std::vector<double> pts = sphere_points(lat.d, m);
  std::vector<double> kernel(lat.size(), 0.0);
  double p[8];
  for (int i = 0; i < m; ++i) {
    for (int a = 0; a < lat.d; ++a) p[a] = eps * pts[i * lat.d + a];
    raster_point(kernel, lat, p, 1.0 / m);
  }
  fftw_complex* fk = fft_forward(lat, kernel);
  fftw_complex* fh = fft_forward(lat, field.values);
  const std::size_t nmodes = (lat.size() / lat.n) * (lat.n / 2 + 1);
  const double inv_n = 1.0 / static_cast<double>(lat.size());
  for (std::size_t i = 0; i < nmodes; ++i) {
    // fh * conj(fk): cross-correlation picks up h at x + eps w
    const double re = (fh[i][0] * fk[i][0] + fh[i][1] * fk[i][1]) * inv_n;
    const double im = (fh[i][1] * fk[i][0] - fh[i][0] * fk[i][1]) * inv_n;
    fh[i][0] = re;
    fh[i][1] = im;
  }
  FieldGrid out = field;
  const std::vector<double> raw = fft_backward(lat, fh);
  fftw_free(fh);
  fftw_free(fk);
  // the kernel is rastered around the coordinate origin (index n/2 on each
  // axis), so the circular correlation comes back rolled by n/2: unshift
  const int half = lat.n / 2;
  int lo[8], hi[8];
  for (int a = 0; a < lat.d; ++a) {
    lo[a] = 0;
    hi[a] = lat.n - 1;
  }
  for_box(lat.d, lo, hi, [&](const int* idx) {
    std::size_t dst = 0, src = 0;
    for (int a = 0; a < lat.d; ++a) {
      dst = dst * lat.n + idx[a];
      src = src * lat.n + ((idx[a] + half) % lat.n);
    }
    out.values[dst] = raw[src];
  });
  out.reg_epsilon = eps;
  return out;
}

FieldGrid add_log_singularity(const FieldGrid& field, double beta,
                              const std::vector<double>& center) {
  const Lattice& lat = field.lattice;
  check_point_dim(center, lat.d, "add_log_singularity");
  FieldGrid out = field;
  const double dx = lat.dx();
  const double clamp = 0.5 * dx;
  int lo[8], hi[8];
  for (int a = 0; a < lat.d; ++a) {
    lo[a] = 0;
    hi[a] = lat.n - 1;
  }
  for_box(lat.d, lo, hi, [&](const int* idx) {
    double r2 = 0.0;
    std::size_t flat = 0;
    for (int a = 0; a < lat.d; ++a) {
      const double dxa = lat.coord(idx[a]) - center[a];
      r2 += dxa * dxa;
      flat = flat * lat.n + idx[a];
    }
    out.values[flat] -= beta * std::log(std::max(std::sqrt(r2), clamp));
  });
  out.has_singularity = out.has_singularity || beta != 0.0;
  if (beta != 0.0) {
    out.sing_beta += beta;
    out.sing_center = center;
  }
  return out;
}

MeasureGrid gmc_measure_from_reg(const FieldGrid& reg_field, double gamma) {
  const Lattice& lat = reg_field.lattice;
  if (reg_field.reg_epsilon <= 0.0)
    throw std::invalid_argument("gmc_measure_from_reg: field not regularized");
  if (!(gamma > 0.0) || gamma * gamma >= 2.0 * lat.d)
    throw std::domain_error("gmc_measure: gamma outside (0, sqrt(2d))");
  MeasureGrid out;
  out.lattice = lat;
  out.gamma = gamma;
  out.epsilon = reg_field.reg_epsilon;
  const double cell = std::pow(lat.dx(), lat.d);
  const double pre = std::pow(out.epsilon, gamma * gamma / 2.0) * cell;
  out.masses.resize(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i)
    out.masses[i] = pre * std::exp(gamma * reg_field.values[i]);
  return out;
}

MeasureGrid gmc_measure(const FieldGrid& field, double gamma, double eps) {
  return gmc_measure_from_reg(regularize(field, eps), gamma);
}

double ball_mass(const MeasureGrid& measure, const std::vector<double>& x,
                 double r) {
  const Lattice& lat = measure.lattice;
  check_point_dim(x, lat.d, "ball_mass");
  const double dx = lat.dx();
  int lo[8], hi[8];
  for (int a = 0; a < lat.d; ++a) {
    if (std::abs(x[a]) + r > 0.5 * lat.L)
      throw std::invalid_argument("ball_mass: ball leaves box");
    lo[a] = static_cast<int>(std::ceil((x[a] - r) / dx)) + lat.n / 2;
    hi[a] = static_cast<int>(std::floor((x[a] + r) / dx)) + lat.n / 2;
    lo[a] = std::max(lo[a], 0);
    hi[a] = std::min(hi[a], lat.n - 1);
  }
  const double r2 = r * r;
  double acc = 0.0;
  for_box(lat.d, lo, hi, [&](const int* idx) {
    double dist2 = 0.0;
    std::size_t flat = 0;
    for (int a = 0; a < lat.d; ++a) {
      const double dxa = lat.coord(idx[a]) - x[a];
      dist2 += dxa * dxa;
      flat = flat * lat.n + idx[a];
    }
    if (dist2 <= r2) acc += measure.masses[flat];
  });
  return acc;
}

SlopeFit fit_slope(const std::vector<double>& xs,
                   const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n)
    throw std::invalid_argument("fit_slope: need >= 2 matched points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissae");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = ys[i] - fit.intercept - fit.slope * xs[i];
      rss += e * e;
    }
    fit.stderr_slope = std::sqrt(rss / (n - 2) / sxx);
  }
  return fit;
}

SlopeFit scaling_exponent(const std::vector<MeasureGrid>& ensemble, double q,
                          const std::vector<double>& radii,
                          const std::vector<double>& center, double trim,
                          double quantile) {
  if (radii.size() < 3)
    throw std::invalid_argument("scaling_exponent: need >= 3 radii");
  if (ensemble.empty())
    throw std::invalid_argument("scaling_exponent: empty ensemble");
  std::vector<double> lx, ly;
  for (double r : radii) {
    std::vector<double> vals;
    vals.reserve(ensemble.size());
    for (const MeasureGrid& m : ensemble)
      vals.push_back(std::pow(ball_mass(m, center, r), q));
    double stat;
    if (quantile > 0.0 && quantile < 1.0) {
      std::sort(vals.begin(), vals.end());
      stat = vals[static_cast<std::size_t>(quantile * (vals.size() - 1))];
    } else {
      stat = trimmed_mean(std::move(vals), trim);
    }
    lx.push_back(std::log(r));
    ly.push_back(std::log(stat));
  }
  return fit_slope(lx, ly);
}

double thickness(const FieldGrid& field, const std::vector<double>& x,
                 const std::vector<double>& eps_list) {
  if (eps_list.size() < 3)
    throw std::invalid_argument("thickness: need >= 3 radii");
  std::vector<double> xs, ys;
  for (double e : eps_list) {
    xs.push_back(-std::log(e));
    ys.push_back(spherical_average(field, x, e));
  }
  return fit_slope(xs, ys).slope;
}

double potential(const MeasureGrid& measure, const std::vector<double>& x,
                 double radius, int d) {
  if (d == 2)
    throw std::invalid_argument("potential: d = 2 log kernel unsupported");
  const Lattice& lat = measure.lattice;
  check_point_dim(x, lat.d, "potential");
  const double dx = lat.dx();
  const double clamp = 0.5 * dx;
  int lo[8], hi[8];
  for (int a = 0; a < lat.d; ++a) {
    lo[a] = std::max(
        static_cast<int>(std::ceil((x[a] - radius) / dx)) + lat.n / 2, 0);
    hi[a] = std::min(
        static_cast<int>(std::floor((x[a] + radius) / dx)) + lat.n / 2,
        lat.n - 1);
  }
  const double r2 = radius * radius;
  double acc = 0.0;
  for_box(lat.d, lo, hi, [&](const int* idx) {
    double dist2 = 0.0;
    std::size_t flat = 0;
    for (int a = 0; a < lat.d; ++a) {
      const double dxa = lat.coord(idx[a]) - x[a];
      dist2 += dxa * dxa;
      flat = flat * lat.n + idx[a];
    }
    if (dist2 <= r2)
      acc += measure.masses[flat] *
             std::pow(std::max(std::sqrt(dist2), clamp), 2.0 - d);
  });
  return acc;
}

StatPair coordinate_change_check(int d, double gamma, double c, int n_reps,
                                 RngSeed seed, int n, double L, double r0,
                                 double eps) {
  if (!(c >= 1.0)) throw std::invalid_argument("coordinate_change_check: c < 1");
  Lattice lat{d, n, L};
  validate_lattice(lat);
  if (eps <= 0.0) eps = 2.0 * c * lat.dx();
  if (c * r0 + eps > 0.5 * L)
    throw std::invalid_argument("coordinate_change_check: scaled ball leaves box");
  const std::vector<double> origin(d, 0.0);
  std::vector<double> va, vb;
  va.reserve(n_reps);
  vb.reserve(n_reps);
  std::vector<double> p(d);
  for (int rep = 0; rep < n_reps; ++rep) {
    const FieldGrid h = synthesize_lgf(lat, seed.stream(rep), false);
    // side A: mu_{h,gamma}(B(0, c r0)) at scale eps
    va.push_back(ball_mass(gmc_measure(h, gamma, eps), origin, c * r0));
    // side B: h^c(x) = h(cx) on the same lattice, scale eps/c
    FieldGrid g = h;
    int lo[8], hi[8];
    for (int a = 0; a < d; ++a) {
      lo[a] = 0;
      hi[a] = n - 1;
    }
    std::size_t flat = 0;
    for_box(d, lo, hi, [&](const int* idx) {
      for (int a = 0; a < d; ++a) p[a] = c * lat.coord(idx[a]);
      g.values[flat++] = interpolate(h, p.data());
    });
    vb.push_back(std::pow(c, d + gamma * gamma / 2.0) *
                 ball_mass(gmc_measure(g, gamma, eps / c), origin, r0));
  }
  auto mean_se = [](const std::vector<double>& v, double& m, double& se) {
    m = 0.0;
    for (double x : v) m += x;
    m /= v.size();
    double var = 0.0;
    for (double x : v) var += (x - m) * (x - m);
    se = v.size() > 1 ? std::sqrt(var / (v.size() - 1) / v.size()) : 0.0;
  };
  StatPair out;
  mean_se(va, out.mean_a, out.se_a);
  mean_se(vb, out.mean_b, out.se_b);
  return out;
}

std::pair<FieldGrid, FieldGrid> radial_project(const FieldGrid& field) {
  const Lattice& lat = field.lattice;
  const double dx = lat.dx();
  const std::size_t nshell =
      static_cast<std::size_t>(lat.n * std::sqrt(static_cast<double>(lat.d))) + 2;
  std::vector<double> sum(nshell, 0.0);
  std::vector<std::size_t> cnt(nshell, 0);
  std::vector<std::size_t> shell_of(lat.size());
  int lo[8], hi[8];
  for (int a = 0; a < lat.d; ++a) {
    lo[a] = 0;
    hi[a] = lat.n - 1;
  }
  std::size_t flat = 0;
  for_box(lat.d, lo, hi, [&](const int* idx) {
    double r2 = 0.0;
    for (int a = 0; a < lat.d; ++a) {
      const double xa = lat.coord(idx[a]);
      r2 += xa * xa;
    }
    const std::size_t k =
        static_cast<std::size_t>(std::lround(std::sqrt(r2) / dx));
    shell_of[flat] = k;
    sum[k] += field.values[flat];
    cnt[k] += 1;
    ++flat;
  });
  FieldGrid radial = field, resid = field;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const std::size_t k = shell_of[i];
    radial.values[i] = sum[k] / static_cast<double>(cnt[k]);
    resid.values[i] = field.values[i] - radial.values[i];
  }
  return {std::move(radial), std::move(resid)};
}

void save_snapshot(const FieldGrid& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_snapshot: cannot open " + path);
  const char magic[8] = {'L', 'G', 'F', 'S', 'N', 'A', 'P', '1'};
  out.write(magic, 8);
  auto put = [&](const void* p, std::size_t sz) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(sz));
  };
  const std::int32_t d = field.lattice.d, n = field.lattice.n;
  put(&d, 4);
  put(&n, 4);
  put(&field.lattice.L, 8);
  put(&field.seed_tag.seed, 8);
  put(&field.seed_tag.stream_id, 8);
  const std::uint8_t pinned = field.pinned ? 1 : 0;
  const std::uint8_t has_sing = field.has_singularity ? 1 : 0;
  put(&pinned, 1);
  put(&has_sing, 1);
  put(&field.sing_beta, 8);
  std::vector<double> center(field.lattice.d, 0.0);
  if (field.has_singularity) center = field.sing_center;
  put(center.data(), 8 * center.size());
  put(&field.reg_epsilon, 8);
  put(field.values.data(), 8 * field.values.size());
  if (!out) throw std::runtime_error("save_snapshot: write failed");
}

FieldGrid load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_snapshot: cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, "LGFSNAP1", 8) != 0)
    throw std::runtime_error("load_snapshot: bad magic");
  auto get = [&](void* p, std::size_t sz) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(sz));
  };
  FieldGrid f;
  std::int32_t d = 0, n = 0;
  get(&d, 4);
  get(&n, 4);
  f.lattice.d = d;
  f.lattice.n = n;
  get(&f.lattice.L, 8);
  get(&f.seed_tag.seed, 8);
  get(&f.seed_tag.stream_id, 8);
  std::uint8_t pinned = 0, has_sing = 0;
  get(&pinned, 1);
  get(&has_sing, 1);
  f.pinned = pinned != 0;
  f.has_singularity = has_sing != 0;
  get(&f.sing_beta, 8);
  std::vector<double> center(d, 0.0);
  get(center.data(), 8 * center.size());
  if (f.has_singularity) f.sing_center = center;
  get(&f.reg_epsilon, 8);
  validate_lattice(f.lattice);
  f.values.resize(f.lattice.size());
  get(f.values.data(), 8 * f.values.size());
  if (!in) throw std::runtime_error("load_snapshot: truncated snapshot");
  return f;
}

}  // namespace lgf
