#include <benchmark/benchmark.h>

#include <cmath>

#include "riotwave/engine.hpp"
#include "riotwave/equilibria.hpp"

using namespace riotwave;

namespace {

SimProblem wave_problem(std::size_t n) {
  Params p;
  p.rho = 6.0;
  p.beta = 8.0;
  p.a_bar = 8.0 / 3.0;
  p.k2 = 0.25;
  p.alpha = 0.1;
  SimProblem prob;
  prob.params = p;
  prob.grid = {n, 0.05, 0.0, Boundary::NoFlux};
  prob.node_alpha.assign(n, p.alpha);
  return prob;
}

Fields front_state(const SimProblem& prob) {
  const auto states = find_steady_states(prob.params);
  const double u_star = states.back().u;
  Fields f;
  f.u.assign(prob.grid.n, 0.0);
  f.v.resize(prob.grid.n);
  for (std::size_t i = 0; i < prob.grid.n; ++i) {
    if (prob.grid.x(i) < 0.4 * prob.grid.extent()) f.u[i] = u_star;
    f.v[i] = equilibrium_tension(f.u[i], prob.params);
  }
  return f;
}

}  // namespace

static void BM_step(benchmark::State& state) {
  const SimProblem prob = wave_problem(static_cast<std::size_t>(state.range(0)));
  const double dt = stable_dt(prob.grid, prob.params);
  Fields f = front_state(prob);
  for (auto _ : state) {
    f = step(f, prob, dt);
    benchmark::DoNotOptimize(f.u.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_step)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_step_with_kernel(benchmark::State& state) {
  SimProblem prob = wave_problem(static_cast<std::size_t>(state.range(0)));
  prob.params.k = 0.5;
  prob.kernel = KernelSpec::gaussian(0.5);
  const double dt = stable_dt(prob.grid, prob.params);
  Fields f = front_state(prob);
  for (auto _ : state) {
    f = step(f, prob, dt);
    benchmark::DoNotOptimize(f.u.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_step_with_kernel)->Arg(256)->Arg(1024);
