#include <doctest.h>

#include <cmath>
#include <vector>

#include "lgf/path.hpp"
#include "lgf/stochastic.hpp"

TEST_CASE("brownian sampler determinism and increment law") {
  const std::vector<double> grid = lgf::uniform_grid(0.0, 1.0, 100);
  const lgf::Path p1 = lgf::sample_brownian(3, grid, lgf::RngSeed{5, 1});
  const lgf::Path p2 = lgf::sample_brownian(3, grid, lgf::RngSeed{5, 1});
  CHECK(p1.values == p2.values);
  CHECK(p1.at(0) == 0.0);

  // empirical variance of B_1 over replicates, loose band
  const int reps = 2000;
  double v = 0.0;
  for (int i = 0; i < reps; ++i) {
    const lgf::Path p =
        lgf::sample_brownian(1, grid, lgf::RngSeed{11, 0}.stream(i));
    v += p.at(p.size() - 1) * p.at(p.size() - 1);
  }
  v /= reps;
  CHECK(std::abs(v - 1.0) < 5.0 * std::sqrt(2.0 / reps));
}

TEST_CASE("bridge endpoints are exact") {
  const std::vector<double> grid = lgf::uniform_grid(0.0, 2.0, 64);
  const std::vector<double> x = {0.5, -1.0};
  const std::vector<double> y = {2.0, 3.0};
  const lgf::Path b = lgf::sample_bridge(2, 2.0, x, y, grid, lgf::RngSeed{3, 0});
  CHECK(b.point(0)[0] == doctest::Approx(x[0]).epsilon(1e-14));
  CHECK(b.point(0)[1] == doctest::Approx(x[1]).epsilon(1e-14));
  CHECK(b.point(b.size() - 1)[0] == doctest::Approx(y[0]).epsilon(1e-12));
  CHECK(b.point(b.size() - 1)[1] == doctest::Approx(y[1]).epsilon(1e-12));
}

TEST_CASE("two-sided path is glued at zero") {
  std::vector<double> grid;
  for (int i = -50; i <= 30; ++i) grid.push_back(i * 0.1);
  const lgf::Path p = lgf::sample_two_sided(grid, lgf::RngSeed{8, 0});
  CHECK(p.times[p.origin_index] == 0.0);
  CHECK(p.at(p.origin_index) == 0.0);
}

TEST_CASE("heat kernel normalizes") {
  // midpoint-rule integral of the 1-d kernel over a wide interval
  const double t = 0.3;
  const double x = 0.0;
  double sum = 0.0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const double y = -8.0 + (i + 0.5) * 16.0 / n;
    sum += lgf::heat_kernel(t, &x, &y, 1) * 16.0 / n;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("conditioned path stays above the line") {
  const std::vector<double> grid = lgf::uniform_grid(0.0, 10.0, 1000);
  lgf::ConditionedStats stats;
  const lgf::Path p =
      lgf::sample_conditioned_above_line(1.0, 10.0, grid, lgf::RngSeed{13, 0},
                                         &stats);
  CHECK(stats.attempts >= 1);
  for (std::size_t i = 1; i < p.size(); ++i)
    CHECK(p.at(i) > -1.0 * p.times[i]);
}
