#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "riotwave/wave.hpp"

using namespace riotwave;

namespace {

Params bistable_params(double alpha = 0.1) {
  Params p;
  p.rho = 6.0;
  p.beta = 8.0;
  p.a_bar = 8.0 / 3.0;
  p.k = 0.0;
  p.k2 = 0.25;
  p.m_bar = 1.0;
  p.p = 1.0;
  p.alpha = alpha;
  return p;
}

Params monostable_params() {
  Params p;
  p.rho = 8.0;
  p.beta = 0.3;
  p.a_bar = 8.0 / 3.0;
  p.k = 0.0;
  p.k2 = 0.25;
  p.m_bar = 1.0;
  p.p = 1.0;
  p.alpha = 0.0;
  return p;
}

Grid1D make_grid(std::size_t n, double dx) {
  Grid1D g;
  g.n = n;
  g.dx = dx;
  g.x0 = 0.0;
  g.boundary = Boundary::NoFlux;
  return g;
}

}  // namespace

TEST_CASE("front position: bracketing, translation, synthetic profile") {
  const Grid1D g = make_grid(256, 0.05);
  std::vector<double> u(g.n, 0.0);
  const std::size_t m = 100;
  for (std::size_t i = 0; i <= m; ++i) u[i] = 1.0;
  const double pos = front_position(u, g, 0.5);
  CHECK(pos >= g.x(m));
  CHECK(pos <= g.x(m + 1));

  std::vector<double> shifted(g.n, 0.0);
  for (std::size_t i = 0; i <= m + 1; ++i) shifted[i] = 1.0;
  CHECK(front_position(shifted, g, 0.5) - pos == doctest::Approx(g.dx).epsilon(1e-12));

  const std::vector<double> tanh_u = oracles::tanh_front(1.0, 7.30, 0.5, 0.0, g.dx, g.n);
  CHECK(std::abs(front_position(tanh_u, g, 0.5) - 7.30) < 0.5 * g.dx);

  std::vector<double> flat(g.n, 0.1);
  CHECK_THROWS_AS(front_position(flat, g, 0.5), numerical_error);

  std::vector<double> bumpy(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    bumpy[i] = 0.5 + 0.4 * std::sin(2.0 * g.x(i));
  }
  CHECK_THROWS_AS(front_position(bumpy, g, 0.5), numerical_error);
}

TEST_CASE("speed estimate: exact line, stationary, retreating, data checks") {
  FrontTrace tr;
  for (int i = 0; i < 20; ++i) {
    tr.times.push_back(i);
    tr.positions.push_back(3.0 + 0.42 * i);
  }
  const WaveSpeedEstimate est = estimate_speed(tr);
  CHECK(est.c == doctest::Approx(0.42).epsilon(1e-12));
  CHECK(est.r2 == doctest::Approx(1.0));
  CHECK(est.classification == FrontClass::Advancing);

  FrontTrace flat;
  for (int i = 0; i < 20; ++i) {
    flat.times.push_back(i);
    flat.positions.push_back(7.0);
  }
  CHECK(estimate_speed(flat).classification == FrontClass::Stationary);

  FrontTrace back;
  for (int i = 0; i < 20; ++i) {
    back.times.push_back(i);
    back.positions.push_back(7.0 - 0.1 * i);
  }
  const WaveSpeedEstimate rest = estimate_speed(back);
  CHECK(rest.classification == FrontClass::Retreating);
  CHECK(rest.c < 0.0);

  FrontTrace tiny;
  for (int i = 0; i < 5; ++i) {
    tiny.times.push_back(i);
    tiny.positions.push_back(i);
  }
  CHECK_THROWS_AS(estimate_speed(tiny), numerical_error);
}

TEST_CASE("speed estimate cuts a curved transient") {
  FrontTrace tr;
  for (int i = 0; i < 60; ++i) {
    const double t = 0.5 * i;
    // slow start confined to the first 30%, then a straight line of slope 1
    const double pos = t < 9.0 ? 0.05 * t * t : (t - 4.95);
    tr.times.push_back(t);
    tr.positions.push_back(pos);
  }
  const WaveSpeedEstimate est = estimate_speed(tr);
  CHECK(est.transient_cut >= 0.3 * tr.times.back());
  CHECK(est.c == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(est.r2 >= 0.9999);
}

TEST_CASE("wave experiment: speed sign follows the net potential") {
  WaveExperimentSpec spec;
  spec.params = bistable_params(0.02);
  spec.length = 40.0;
  spec.t_end = 10.0;
  spec.snapshot_count = 51;
  spec.ic.step_fraction = 0.4;

  const WaveExperimentResult res = run_wave_experiment(spec);
  REQUIRE(std::abs(res.potential_net) > 0.01);
  CHECK(res.estimate.classification ==
        (res.potential_net > 0.0 ? FrontClass::Advancing : FrontClass::Retreating));
  CHECK((res.estimate.c > 0.0) == (res.potential_net > 0.0));
  CHECK(res.estimate.r2 > 0.999);

  // the growth-only potential is nonnegative by construction; the net one
  // is the discriminating quantity
  CHECK(res.potential_growth >= 0.0);

  // late profiles translate without changing shape, monotonically decreasing
  CHECK(res.translation_invariant);
  CHECK(res.profile_change < 1e-3);
  const std::vector<double>& last = res.last_snapshot.u;
  for (std::size_t i = 0; i + 1 < last.size(); ++i) {
    CHECK(last[i + 1] <= last[i] + 1e-6);
  }
}

TEST_CASE("wave experiment: measurement is translation invariant") {
  WaveExperimentSpec spec;
  spec.params = bistable_params(0.02);
  spec.length = 40.0;
  spec.t_end = 10.0;
  spec.snapshot_count = 51;
  spec.ic.step_fraction = 0.35;

  WaveExperimentSpec shifted = spec;
  shifted.ic.step_fraction = 0.40;  // initial data moved by 2.0
  const double dx_shift = (0.40 - 0.35) * spec.length;

  const WaveExperimentResult a = run_wave_experiment(spec);
  const WaveExperimentResult b = run_wave_experiment(shifted);
  CHECK(std::abs(b.estimate.c - a.estimate.c) < 1e-4);
  // compare front positions at common sample times
  std::size_t matched = 0;
  for (std::size_t i = 0; i < a.trace.times.size(); ++i) {
    for (std::size_t j = 0; j < b.trace.times.size(); ++j) {
      if (a.trace.times[i] == b.trace.times[j]) {
        CHECK(std::abs(b.trace.positions[j] - a.trace.positions[i] - dx_shift) <
              0.5 * spec.dx + 1e-9);
        ++matched;
      }
    }
  }
  CHECK(matched >= 10);
}

TEST_CASE("wave experiment: domain too small raises a config error") {
  WaveExperimentSpec spec;
  spec.params = monostable_params();  // fast KPP-type front
  spec.length = 24.0;                 // margin 10 on both sides leaves no room
  spec.t_end = 10.0;
  spec.snapshot_count = 41;
  spec.ic.kind = InitialKind::ExpDecay;
  spec.ic.decay_rate = 1.0;
  CHECK_THROWS_AS(run_wave_experiment(spec), config_error);
}

TEST_CASE("steep initial decay rates saturate at a common speed") {
  WaveExperimentSpec base;
  base.params = monostable_params();
  base.length = 64.0;
  base.dx = 0.1;
  base.t_end = 13.0;
  base.snapshot_count = 53;
  base.ic.kind = InitialKind::ExpDecay;
  base.ic.amplitude = 5.0;

  const auto speeds = speed_vs_initial_decay(base, {8.0, 16.0});
  REQUIRE(speeds.size() == 2);
  const double c8 = speeds[0].second.c;
  const double c16 = speeds[1].second.c;
  CHECK(c8 > 0.0);
  CHECK(c16 > 0.0);
  CHECK(std::abs(c8 - c16) / c8 < 0.02);
}

TEST_CASE("extinction: full censorship decays at unit rate") {
  ExtinctionSpec spec;
  spec.params = bistable_params(1.0);
  spec.shocks.push_back({0.0, 10.0, 1.0});
  const ExtinctionReport rep = extinction_experiment(spec);
  CHECK(rep.tau_hat > 0.99);
  CHECK(rep.tau_hat < 1.01);
  CHECK(rep.decayed);
  CHECK(rep.final_v_err < 1e-6);
  CHECK(rep.final_u_sup < 1e-6);
}

TEST_CASE("extinction: decay resumes after repeated shocks") {
  ExtinctionSpec spec;
  spec.params = bistable_params(1.0);
  spec.shocks.push_back({0.0, 6.0, 1.0});
  spec.shocks.push_back({5.0, 10.0, 1.0});
  spec.shocks.push_back({10.0, 14.0, 1.0});
  const ExtinctionReport rep = extinction_experiment(spec);
  CHECK(rep.decayed);  // shocks enter the tension only; activity keeps falling
  CHECK(rep.final_u_sup < 1e-6);
  CHECK(rep.final_v_err < 1e-6);
}

TEST_CASE("extinction: weak reinforcement dies out without censorship") {
  ExtinctionSpec spec;
  spec.params = bistable_params(0.0);
  spec.params.rho = 0.5;
  spec.shocks.push_back({0.0, 10.0, 1.0});
  const ExtinctionReport rep = extinction_experiment(spec);
  CHECK(rep.decayed);
  CHECK(rep.final_u_sup < 1e-6);
  CHECK(rep.final_v_err < 1e-6);
  CHECK(rep.tau_hat > 0.4);  // reaction bound: decay at least at rate 1 - rho
}
