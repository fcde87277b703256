#include <benchmark/benchmark.h>

#include "riotwave/hetero.hpp"

using namespace riotwave;

static void BM_principal_eigenvalue(benchmark::State& state) {
  Params p;
  p.rho = 6.0;
  p.beta = 2.0;
  p.a_bar = 2.0;
  p.k2 = 0.25;
  PeriodicEnv env;
  env.period = 2.0;
  env.patches.push_back({0.0, 1.0, 0.0});
  env.patches.push_back({1.0, 2.0, 0.5});
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(principal_eigenvalue(p, env, n).lambda);
  }
}
BENCHMARK(BM_principal_eigenvalue)->Arg(64)->Arg(128)->Arg(256);
