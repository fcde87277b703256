#include <benchmark/benchmark.h>

#include "riotwave/equilibria.hpp"

using namespace riotwave;

namespace {

Params bistable() {
  Params p;
  p.rho = 6.0;
  p.beta = 8.0;
  p.a_bar = 8.0 / 3.0;
  p.k2 = 0.25;
  return p;
}

}  // namespace

static void BM_find_steady_states(benchmark::State& state) {
  const Params p = bistable();
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_steady_states(p));
  }
}
BENCHMARK(BM_find_steady_states);

static void BM_classify_region(benchmark::State& state) {
  Params p = bistable();
  double rho = 0.5;
  for (auto _ : state) {
    p.rho = rho;
    rho = rho < 12.0 ? rho + 0.37 : 0.5;
    benchmark::DoNotOptimize(classify_region(p));
  }
}
BENCHMARK(BM_classify_region);

static void BM_wave_potential(benchmark::State& state) {
  Params p = bistable();
  p.alpha = 0.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(net_wave_potential(0.8, p));
  }
}
BENCHMARK(BM_wave_potential);
