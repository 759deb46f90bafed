// Serial reference path vs OpenMP path for the main kernels.
// Run with --benchmark_filter=<kernel> and OMP_NUM_THREADS as desired.

#include <benchmark/benchmark.h>

#include <memory>

#include "kplane/flow.hpp"
#include "kplane/mc_oracle.hpp"
#include "kplane/operators.hpp"
#include "kplane/parallel.hpp"
#include "kplane/random.hpp"

using namespace kplane;

namespace {

const TransformParams kParams(1, 3);

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

std::shared_ptr<const AxiGrid> grid(std::size_t n) {
  return std::make_shared<const AxiGrid>(AxiGrid::sinh_spaced(n, n, 1e5, 1.0));
}

void BM_t_transform(benchmark::State& state) {
  const RadialProfile f = preset_profile("gaussian", kParams);
  for (auto _ : state) benchmark::DoNotOptimize(t_transform(f, kParams, exec_of(state)));
}

void BM_s_symmetry_radial(benchmark::State& state) {
  const RadialProfile f = preset_profile("indicator", kParams);
  const auto g = grid(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(s_symmetry_radial(f, g, kParams, exec_of(state), 2));
}

void BM_s_symmetry(benchmark::State& state) {
  CounterRng rng(1, 0);
  const AxiSymField f = random_field(rng, 3, grid(static_cast<std::size_t>(state.range(1))), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(s_symmetry(f, kParams, exec_of(state)));
}

void BM_rearrange(benchmark::State& state) {
  CounterRng rng(2, 0);
  const AxiSymField f = random_field(rng, 3, grid(static_cast<std::size_t>(state.range(1))), 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rearrange(f, default_radial_grid(), 0.0, Interp::log_pchip, exec_of(state)));
  }
}

void BM_drury_mc(benchmark::State& state) {
  const PointFunction h = [](std::span<const double> x) {
    double s = 1.0;
    for (double v : x) s += v * v;
    return 1.0 / s;
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(drury_norm_mc(h, TransformParams(1, 2), 20000, 7, exec_of(state)));
  }
}

}  // namespace

BENCHMARK(BM_t_transform)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_s_symmetry_radial)->Args({0, 512})->Args({1, 512})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_s_symmetry)->Args({0, 512})->Args({1, 512})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rearrange)->Args({0, 512})->Args({1, 512})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_drury_mc)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  configure_threads();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
