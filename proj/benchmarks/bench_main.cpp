#include <benchmark/benchmark.h>

#include "nlsscat/dynamics.hpp"
#include "nlsscat/grid.hpp"
#include "nlsscat/groundstate.hpp"
#include "nlsscat/initialdata.hpp"
#include "nlsscat/observables.hpp"

using namespace nlsscat;

namespace {

// Argument 0 is the dimension, argument 1 the points per axis.
Grid bench_grid(const benchmark::State& state) {
  return Grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 20.0);
}

void BM_FreePropagate(benchmark::State& state) {
  const Grid g = bench_grid(state);
  Field u = gaussian(g, 1.0, 1.0);
  for (auto _ : state) {
    u = free_propagate(u, 1e-3);
    benchmark::DoNotOptimize(u);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}

void BM_StrangStep(benchmark::State& state) {
  const Grid g = bench_grid(state);
  const Params p{g.dim(), 3.0, -1.0};
  Field u = gaussian(g, 1.0, 1.0);
  double t = 0.0;
  for (auto _ : state) {
    u = strang_step(u, t, 1e-3, p);
    t += 1e-3;
    benchmark::DoNotOptimize(u);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}

void BM_Observe(benchmark::State& state) {
  const Grid g = bench_grid(state);
  const Params p{g.dim(), 3.0, -1.0};
  const Field u = gaussian(g, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(observe(u, 1.0, p));
}

void BM_Petviashvili(benchmark::State& state) {
  const Grid g = bench_grid(state);
  const Params p{g.dim(), 2.0, 1.0};
  const Field init = gaussian(g, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(petviashvili(p, g, init));
}

}  // namespace

BENCHMARK(BM_FreePropagate)->Args({1, 1024})->Args({1, 16384})->Args({2, 256})->Args({3, 64});
BENCHMARK(BM_StrangStep)->Args({1, 1024})->Args({1, 16384})->Args({2, 256})->Args({3, 64});
BENCHMARK(BM_Observe)->Args({1, 4096})->Args({2, 256});
BENCHMARK(BM_Petviashvili)->Args({1, 1024})->Args({2, 128})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
