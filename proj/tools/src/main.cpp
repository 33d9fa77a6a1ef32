// lgf-lab: seeded experiment front end over the lgf core library.
// Commands: sphavg, specdim, gmc, lbm, mixing, cone.  Every emitted data
// byte is a pure function of (config, seed); wall-clock metadata lives only
// in the run_meta.json sidecar.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lgf/cone.hpp"
#include "lgf/gmc.hpp"
#include "lgf/langevin.hpp"
#include "lgf/lbm.hpp"
#include "lgf/params.hpp"
#include "lgf/sphavg.hpp"
#include "lgf/stochastic.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string command;
  std::map<std::string, std::string> kv;  // command-specific knobs
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_dir = ".";
  double tol_scale = 1.0;
};

double get_d(const RunConfig& c, const std::string& key, double dflt) {
  auto it = c.kv.find(key);
  return it == c.kv.end() ? dflt : std::stod(it->second);
}

int get_i(const RunConfig& c, const std::string& key, int dflt) {
  auto it = c.kv.find(key);
  return it == c.kv.end() ? dflt : std::stoi(it->second);
}

std::string get_s(const RunConfig& c, const std::string& key,
                  const std::string& dflt) {
  auto it = c.kv.find(key);
  return it == c.kv.end() ? dflt : it->second;
}

std::vector<double> get_list(const RunConfig& c, const std::string& key,
                             std::vector<double> dflt) {
  auto it = c.kv.find(key);
  if (it == c.kv.end()) return dflt;
  std::vector<double> out;
  std::stringstream ss(it->second);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

void parse_config_file(const std::string& path,
                       std::map<std::string, std::string>& kv) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
}

// Canonical serialization of the full effective config, and its FNV-1a hash
// (the provenance stamp carried by every output header).
std::string canonical_config(const RunConfig& c) {
  std::ostringstream os;
  os << "command=" << c.command << "\nseed=" << c.seed
     << "\ntolerance-scale=" << c.tol_scale << "\n";
  for (const auto& [k, v] : c.kv) os << k << "=" << v << "\n";
  return os.str();
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct OutputWriter {
  const RunConfig& cfg;
  std::string hash;
  std::vector<std::string> files;

  explicit OutputWriter(const RunConfig& c)
      : cfg(c), hash(fnv1a_hex(canonical_config(c))) {
    fs::create_directories(cfg.out_dir);
  }

  std::string header() const {
    std::ostringstream os;
    os << "# config_hash=" << hash << "\n";
    std::istringstream is(canonical_config(cfg));
    std::string line;
    while (std::getline(is, line)) os << "# " << line << "\n";
    return os.str();
  }

  void csv(const std::string& name, const std::vector<std::string>& cols,
           const std::vector<std::vector<double>>& rows) {
    const std::string path = cfg.out_dir + "/" + name;
    std::ofstream out(path);
    out << header() << "# columns: ";
    for (std::size_t i = 0; i < cols.size(); ++i)
      out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        out << (i ? "," : "") << fmt_num(row[i]);
      out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
    files.push_back(name);
  }

  void json_file(const std::string& name, json j) {
    j["config_hash"] = hash;
    const std::string path = cfg.out_dir + "/" + name;
    std::ofstream out(path);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
    files.push_back(name);
  }

  // Sidecar: the only place a timestamp may appear.
  void sidecar() const {
    json j;
    j["config_hash"] = hash;
    j["files"] = files;
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    j["wall_clock_unix_s"] =
        std::chrono::duration_cast<std::chrono::seconds>(now).count();
    std::ofstream out(cfg.out_dir + "/run_meta.json");
    out << j.dump(2) << "\n";
  }
};

// Deterministic replicate-parallel loop: results land in caller-indexed
// slots, so the output is independent of the worker count.
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

void mean_var(const std::vector<double>& v, double& m, double& var) {
  m = 0.0;
  for (double x : v) m += x;
  m /= v.size();
  var = 0.0;
  for (double x : v) var += (x - m) * (x - m);
  var /= v.size() > 1 ? v.size() - 1 : 1;
}

int cmd_sphavg(const RunConfig& cfg) {
  const int d = get_i(cfg, "d", 4);
  const double t_max = get_d(cfg, "t_max", 2.0);
  const int n_steps = get_i(cfg, "n_steps", 200);
  const double cutoff = get_d(cfg, "cutoff", 8.0);
  const int n_reps = get_i(cfg, "n_reps", 400);
  const std::string method = get_s(cfg, "method", "both");
  if (d != 2 && (d < 4 || d % 2 != 0))
    throw std::domain_error("sphavg: d must be 2 or even >= 4");
  OutputWriter out(cfg);

  const std::vector<double> grid = lgf::uniform_grid(0.0, t_max, n_steps);
  std::vector<std::vector<double>> analytic;
  for (double t : grid)
    analytic.push_back({t, lgf::variance_increment(t, d)});
  out.csv("sphavg_analytic.csv", {"t", "var_s"}, analytic);

  const std::vector<double> probes = {0.25 * t_max, 0.5 * t_max, t_max};
  json summary;
  auto run_method = [&](const std::string& name) {
    auto simulate = [&](lgf::RngSeed s) {
      return name == "repr" ? lgf::simulate_repr(grid, d, cutoff, s)
                            : lgf::simulate_sde(grid, d, s);
    };
    const lgf::RadialSample traj = simulate(lgf::RngSeed{cfg.seed, 0});
    std::vector<std::string> cols = {"t", "s"};
    for (int c = 0; c < traj.derivs.cols(); ++c)
      cols.push_back("d" + std::to_string(c + 1));
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      std::vector<double> row = {traj.times[i], traj.s[i]};
      for (int c = 0; c < traj.derivs.cols(); ++c)
        row.push_back(traj.derivs(i, c));
      rows.push_back(std::move(row));
    }
    out.csv("sphavg_" + name + ".csv", cols, rows);

    // empirical variance at probe times over replicates
    std::vector<std::vector<double>> samples(
        probes.size(), std::vector<double>(n_reps, 0.0));
    parallel_for(n_reps, cfg.threads, [&](int rep) {
      const lgf::RadialSample rs = simulate(
          lgf::RngSeed{cfg.seed, 0}.stream(static_cast<std::uint64_t>(rep) + 1));
      for (std::size_t pi = 0; pi < probes.size(); ++pi) {
        const std::size_t j = static_cast<std::size_t>(
            std::lround(probes[pi] / t_max * n_steps));
        samples[pi][rep] = rs.s[j];
      }
    });
    json per;
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
      double m, var;
      mean_var(samples[pi], m, var);
      const double target = lgf::variance_increment(probes[pi], d);
      json e;
      e["t"] = probes[pi];
      e["var_empirical"] = var;
      e["var_analytic"] = target;
      e["var_se"] = var * std::sqrt(2.0 / n_reps);
      per.push_back(e);
    }
    summary[name] = per;
  };
  if (method == "repr" || method == "both") run_method("repr");
  if (method == "sde" || method == "both") run_method("sde");
  if (method != "repr" && method != "sde" && method != "both")
    throw std::invalid_argument("sphavg: method must be repr|sde|both");
  out.json_file("sphavg_summary.json", summary);
  out.sidecar();
  return 0;
}

int cmd_specdim(const RunConfig& cfg) {
  const int d = get_i(cfg, "d", 4);
  const double gamma = get_d(cfg, "gamma", 1.0);
  const double beta = get_d(cfg, "beta", 0.0);
  const lgf::Params pm = lgf::Params::make(d, gamma, beta);
  if (pm.q_val <= std::sqrt(2.0 * d))
    throw std::domain_error(
        "specdim: supercritical parameters (Q <= sqrt(2d), i.e. alpha >= "
        "alpha_c = " +
        fmt_num(lgf::alpha_critical(d)) + ")");
  const double chi_ref = lgf::chi_bar_formula(d, pm.alpha, beta);
  std::vector<double> chi_list = get_list(
      cfg, "chi_list",
      {chi_ref - 0.5, chi_ref - 0.25, chi_ref, chi_ref + 0.25, chi_ref + 0.5});
  const lgf::SpecDimResult res = lgf::spec_dim_estimate(
      d, gamma, beta, chi_list, get_d(cfg, "t_lo", 0.05),
      get_d(cfg, "t_hi", 0.4), get_i(cfg, "n_reps", 120),
      lgf::RngSeed{cfg.seed, 0}, get_i(cfg, "n_side", d >= 4 ? 32 : 128),
      get_d(cfg, "box_l", d >= 4 ? 1.5 : 4.0), get_i(cfg, "n_t", 5),
      get_i(cfg, "n_steps", 200));
  OutputWriter out(cfg);
  json j;
  j["d_spec_hat"] = res.d_spec;
  j["chi_bar_hat"] = res.chi_bar;
  j["formula_value"] = lgf::spectral_dimension_formula(d, pm.alpha, beta);
  j["chi_list"] = res.chi_list;
  j["slopes"] = res.slopes;
  j["t_grid"] = res.t_grid;
  out.json_file("specdim_summary.json", j);
  out.sidecar();
  return 0;
}

int cmd_gmc(const RunConfig& cfg) {
  const int d = get_i(cfg, "d", 3);
  const double gamma = get_d(cfg, "gamma", 1.0);
  const int n = get_i(cfg, "n", 64);
  const double L = get_d(cfg, "box_l", 4.0);
  const int n_reps = get_i(cfg, "n_reps", 100);
  const double beta = get_d(cfg, "beta", 0.0);
  const lgf::Lattice lat{d, n, L};
  const double eps = get_d(cfg, "eps", 2.0 * lat.dx());
  const std::vector<double> radii =
      get_list(cfg, "radii", {0.25, 0.5, 1.0});
  const std::vector<double> qs = get_list(cfg, "q_list", {0.5, 1.0, 2.0});
  const std::vector<double> origin(d, 0.0);

  std::vector<lgf::MeasureGrid> ensemble(n_reps);
  parallel_for(n_reps, cfg.threads, [&](int rep) {
    lgf::FieldGrid h = lgf::synthesize_lgf(
        lat, lgf::RngSeed{cfg.seed, 0}.stream(rep), false);
    if (beta != 0.0) h = lgf::add_log_singularity(h, beta, origin);
    ensemble[rep] = lgf::gmc_measure(h, gamma, eps);
  });
  OutputWriter out(cfg);
  std::vector<std::vector<double>> rows;
  json j;
  for (double q : qs) {
    const lgf::SlopeFit fit =
        lgf::scaling_exponent(ensemble, q, radii, origin);
    rows.push_back({q, fit.slope, fit.stderr_slope});
    j["slope_q" + fmt_num(q)] = fit.slope;
  }
  const lgf::SlopeFit med =
      lgf::scaling_exponent(ensemble, 1.0, radii, origin, 0.01, 0.5);
  j["slope_q1_median"] = med.slope;
  j["beta"] = beta;
  out.csv("gmc_scaling.csv", {"q", "slope", "stderr"}, rows);
  out.json_file("gmc_summary.json", j);
  out.sidecar();
  return 0;
}

int cmd_lbm(const RunConfig& cfg) {
  const int d = get_i(cfg, "d", 3);
  const double gamma = get_d(cfg, "gamma", 1.0);
  const lgf::Params pm = lgf::Params::make(d, gamma);
  const int n = get_i(cfg, "n", 64);
  const double L = get_d(cfg, "box_l", 4.0);
  const double T = get_d(cfg, "horizon", 0.25);
  const double R = get_d(cfg, "radius", 0.5);
  const int n_reps = get_i(cfg, "n_reps", 200);
  const double ds = get_d(cfg, "ds", 1e-3);
  const lgf::Lattice lat{d, n, L};
  const double eps = get_d(cfg, "eps", 2.0 * lat.dx());

  const lgf::FieldGrid h =
      lgf::synthesize_lgf(lat, lgf::RngSeed{cfg.seed, 0}, false);
  const lgf::FieldGrid reg = lgf::regularize(h, eps);
  OutputWriter out(cfg);

  const std::size_t n_steps = static_cast<std::size_t>(std::ceil(T / ds));
  const lgf::Path b = lgf::sample_brownian(
      d, lgf::uniform_grid(0.0, T, n_steps), lgf::RngSeed{cfg.seed, 1});
  const lgf::ClockSample ck = lgf::clock_on_reg(reg, pm.alpha, b, true);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < ck.times.size(); i += 10)
    rows.push_back({ck.times[i], ck.f_values[i]});
  out.csv("lbm_clock.csv", {"s", "f"}, rows);

  const lgf::StatPair rv = lgf::revuz_check(reg, pm.alpha, T, R, n_reps,
                                            lgf::RngSeed{cfg.seed, 2}, ds);
  json j;
  j["revuz_lhs_mean"] = rv.mean_a;
  j["revuz_lhs_se"] = rv.se_a;
  j["revuz_rhs"] = rv.mean_b;
  j["alpha"] = pm.alpha;
  out.json_file("lbm_summary.json", j);
  out.sidecar();
  return 0;
}

int cmd_mixing(const RunConfig& cfg) {
  const int d = get_i(cfg, "d", 4);
  const double radius = get_d(cfg, "radius", 1.0);
  const int n_pairs = get_i(cfg, "n_pairs", 100);
  std::vector<double> t_grid = get_list(
      cfg, "t_grid", {0.25, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 12.0, 16.0, 20.0});
  const lgf::LangevinSystem sys = lgf::companion_system(d);
  const auto curve = lgf::mixing_profile(sys, radius, t_grid, n_pairs,
                                         lgf::RngSeed{cfg.seed, 0});
  OutputWriter out(cfg);
  std::vector<std::vector<double>> rows;
  for (const auto& [t, tv] : curve) rows.push_back({t, tv});
  out.csv("mixing_tv.csv", {"t", "tv_bound_max"}, rows);
  out.sidecar();
  return 0;
}

int cmd_cone(const RunConfig& cfg) {
  const int d = get_i(cfg, "d", 2);
  const double qmb = get_d(cfg, "q_minus_beta", 2.0);
  const std::vector<double> b_list = get_list(cfg, "b_list", {2.0, 4.0});
  const double w_lo = get_d(cfg, "window_lo", -0.5);
  const double w_hi = get_d(cfg, "window_hi", 2.0);
  const std::vector<double> probes =
      get_list(cfg, "probe_times", {-0.25, 0.5, 1.0, 2.0});
  const int n_reps = get_i(cfg, "n_reps", 150);
  const double dt = get_d(cfg, "dt", 0.01);

  const auto dmat = lgf::convergence_diagnostic(
      d, qmb, b_list, w_lo, w_hi, probes, n_reps, lgf::RngSeed{cfg.seed, 0},
      dt);
  const lgf::ConeSample sample = lgf::sample_recentred(
      d, qmb, b_list.back(), w_lo, w_hi, dt, lgf::RngSeed{cfg.seed, 1});
  OutputWriter out(cfg);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < sample.trajectory.times.size(); ++i)
    rows.push_back({sample.trajectory.times[i], sample.trajectory.s[i]});
  out.csv("cone_trajectory.csv", {"s", "s_b"}, rows);
  json j;
  j["b_list"] = b_list;
  j["energy_distance"] = dmat;
  j["sigma_b"] = sample.sigma_b;
  out.json_file("cone_summary.json", j);
  out.sidecar();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lgf-lab: log-correlated field / GMC / LBM experiments"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  bool seed_given = false;
  std::uint64_t seed_flag = 0;

  for (const char* name :
       {"sphavg", "specdim", "gmc", "lbm", "mixing", "cone"}) {
    CLI::App* sub = app.add_subcommand(name, name);
    sub->add_option("--config", config_path, "key=value config file");
    sub->add_option("--seed", seed_flag, "RNG seed")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--threads", cfg.threads, "worker pool size");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--tolerance-scale", cfg.tol_scale,
                    "tolerance multiplier recorded in headers");
    sub->allow_extras();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);  // unknown command/flags: usage text, exit code 2+
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (!config_path.empty()) parse_config_file(config_path, cfg.kv);
    // key=value extras on the command line override the config file
    for (const std::string& extra : sub->remaining()) {
      const auto eq = extra.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("expected key=value argument: " + extra);
      cfg.kv[extra.substr(0, eq)] = extra.substr(eq + 1);
    }
    if (seed_given) {
      cfg.seed = seed_flag;
    } else if (cfg.kv.count("seed")) {
      cfg.seed = std::stoull(cfg.kv.at("seed"));
    } else if (const char* env = std::getenv("LGFLAB_SEED")) {
      cfg.seed = std::stoull(env);
    }
    cfg.kv.erase("seed");

    if (cfg.command == "sphavg") return cmd_sphavg(cfg);
    if (cfg.command == "specdim") return cmd_specdim(cfg);
    if (cfg.command == "gmc") return cmd_gmc(cfg);
    if (cfg.command == "lbm") return cmd_lbm(cfg);
    if (cfg.command == "mixing") return cmd_mixing(cfg);
    if (cfg.command == "cone") return cmd_cone(cfg);
    throw std::runtime_error("unknown command: " + cfg.command);
  } catch (const std::exception& e) {
    json err;
    err["error"] = e.what();
    err["command"] = cfg.command;
    std::fprintf(stdout, "%s\n", err.dump(2).c_str());
    return 1;
  }
}
