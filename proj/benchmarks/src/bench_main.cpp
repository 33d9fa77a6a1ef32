// Microbenchmarks for the hot paths: field synthesis, whole-grid
// regularization, the clock integral, and the two radial simulators.

#include <benchmark/benchmark.h>

#include "lgf/gmc.hpp"
#include "lgf/lbm.hpp"
#include "lgf/path.hpp"
#include "lgf/sphavg.hpp"
#include "lgf/stochastic.hpp"

namespace {

void BM_SynthesizeLgf(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lgf::Lattice lat{3, n, 4.0};
  std::uint64_t rep = 0;
  for (auto _ : state) {
    const lgf::FieldGrid h =
        lgf::synthesize_lgf(lat, lgf::RngSeed{1, rep++}, false);
    benchmark::DoNotOptimize(h.values.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(lat.size()));
}
BENCHMARK(BM_SynthesizeLgf)->Arg(32)->Arg(64)->Arg(128);

void BM_Regularize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lgf::Lattice lat{3, n, 4.0};
  const lgf::FieldGrid h = lgf::synthesize_lgf(lat, lgf::RngSeed{2, 0}, false);
  for (auto _ : state) {
    const lgf::FieldGrid reg = lgf::regularize(h, 2.0 * lat.dx());
    benchmark::DoNotOptimize(reg.values.data());
  }
}
BENCHMARK(BM_Regularize)->Arg(32)->Arg(64);

void BM_Clock(benchmark::State& state) {
  const lgf::Lattice lat{3, 64, 4.0};
  const lgf::FieldGrid h = lgf::synthesize_lgf(lat, lgf::RngSeed{3, 0}, false);
  const lgf::FieldGrid reg = lgf::regularize(h, 2.0 * lat.dx());
  const std::size_t steps = static_cast<std::size_t>(state.range(0));
  const lgf::Path b = lgf::sample_brownian(
      3, lgf::uniform_grid(0.0, 0.25, steps), lgf::RngSeed{3, 1});
  for (auto _ : state) {
    const lgf::ClockSample ck = lgf::clock_on_reg(reg, 0.63, b, true);
    benchmark::DoNotOptimize(ck.f_values.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(steps));
}
BENCHMARK(BM_Clock)->Arg(250)->Arg(1000)->Arg(4000);

void BM_SimulateRepr(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const std::vector<double> grid = lgf::uniform_grid(0.0, 2.0, 200);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    const lgf::RadialSample rs =
        lgf::simulate_repr(grid, d, 8.0, lgf::RngSeed{4, rep++});
    benchmark::DoNotOptimize(rs.s.data());
  }
}
BENCHMARK(BM_SimulateRepr)->Arg(4)->Arg(6)->Arg(8);

void BM_SimulateSde(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const std::vector<double> grid = lgf::uniform_grid(0.0, 2.0, 200);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    const lgf::RadialSample rs =
        lgf::simulate_sde(grid, d, lgf::RngSeed{5, rep++});
    benchmark::DoNotOptimize(rs.s.data());
  }
}
BENCHMARK(BM_SimulateSde)->Arg(4)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
