#include "riotwave/wave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace riotwave {

const char* to_string(FrontClass c) {
  switch (c) {
    case FrontClass::Advancing: return "advancing";
    case FrontClass::Stationary: return "stationary";
    case FrontClass::Retreating: return "retreating";
  }
  return "?";
}

double front_position(const std::vector<double>& u, const Grid1D& g, double level) {
  if (u.size() != g.n) throw config_error("front_position: field length != grid size");
  int crossings = 0;
  double pos = 0.0;
  for (std::size_t i = 0; i + 1 < g.n; ++i) {
    const double s0 = u[i] - level;
    const double s1 = u[i + 1] - level;
    if (s0 == 0.0) {
      ++crossings;
      pos = g.x(i);
    } else if ((s0 > 0.0) != (s1 > 0.0) && s1 != 0.0) {
      ++crossings;
      pos = g.x(i) + g.dx * s0 / (s0 - s1);
    }
  }
  if (u.back() == level) {
    ++crossings;
    pos = g.x(g.n - 1);
  }
  if (crossings == 0) {
    throw numerical_error("front_position: profile never crosses the level (front absent)");
  }
  if (crossings > 1) {
    throw numerical_error("front_position: profile crosses the level " +
                          std::to_string(crossings) + " times (non-monotone front)");
  }
  return pos;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 std::size_t first) {
  const std::size_t n = x.size() - first;
  if (x.size() != y.size() || n < 2) {
    throw numerical_error("fit_line: need at least two samples");
  }
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = first; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = first; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw numerical_error("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = first; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  // Constant data: the fit is exact, call it r2 = 1 (stationary fronts).
  fit.r2 = syy > 1e-300 ? 1.0 - ss_res / syy : 1.0;
  fit.slope_stderr = n > 2 ? std::sqrt(std::max(0.0, ss_res / (double)(n - 2)) / sxx) : 0.0;
  return fit;
}

WaveSpeedEstimate estimate_speed(const FrontTrace& trace, double stationary_tol) {
  const std::size_t n = trace.times.size();
  if (trace.positions.size() != n) {
    throw config_error("estimate_speed: trace length mismatch");
  }
  if (n < 10) {
    throw numerical_error("estimate_speed: insufficient data (" + std::to_string(n) +
                          " samples, need >= 10)");
  }
  const double t0 = trace.times.front();
  const double t_last = trace.times.back();
  const double cut_time = t0 + 0.3 * (t_last - t0);
  std::size_t first = 0;
  while (first < n && trace.times[first] < cut_time) ++first;
  if (n - first < 10) first = n - 10;

  // Advance the cut until the trailing fit is effectively linear.
  std::size_t best_first = first;
  double best_r2 = -1.0;
  LineFit fit;
  for (std::size_t f = first; f + 10 <= n; ++f) {
    fit = fit_line(trace.times, trace.positions, f);
    if (fit.r2 > best_r2) {
      best_r2 = fit.r2;
      best_first = f;
    }
    if (fit.r2 >= 0.9999) {
      best_first = f;
      break;
    }
  }
  fit = fit_line(trace.times, trace.positions, best_first);

  WaveSpeedEstimate est;
  est.c = fit.slope;
  est.r2 = fit.r2;
  est.c_stderr = fit.slope_stderr;
  est.transient_cut = trace.times[best_first];
  est.samples_used = n - best_first;
  if (std::abs(est.c) < stationary_tol) {
    est.classification = FrontClass::Stationary;
  } else {
    est.classification = est.c > 0.0 ? FrontClass::Advancing : FrontClass::Retreating;
  }
  return est;
}

namespace {

double excited_level(const Params& p) {
  const std::vector<SteadyState> states = find_steady_states(p);
  if (states.size() < 2) {
    throw config_error(
        "wave experiment: parameters admit no non-trivial steady state (no front)");
  }
  return states.back().u;
}

std::vector<double> snapshot_times(double t_end, std::size_t count) {
  std::vector<double> times(count);
  for (std::size_t i = 0; i < count; ++i) {
    times[i] = t_end * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return times;
}

}  // namespace

WaveExperimentResult run_wave_experiment(const WaveExperimentSpec& spec) {
  validate(spec.params);
  if (spec.params.k != 0.0) {
    throw config_error("wave experiment: requires local dispersal (k = 0)");
  }
  Grid1D g;
  g.n = static_cast<std::size_t>(std::lround(spec.length / spec.dx)) + 1;
  g.dx = spec.dx;
  g.x0 = spec.x0;
  g.boundary = Boundary::NoFlux;
  validate(g);

  const double u_star = excited_level(spec.params);
  const double level = spec.level > 0.0 ? spec.level : 0.5 * u_star;

  Fields f0;
  f0.u.assign(g.n, 0.0);
  switch (spec.ic.kind) {
    case InitialKind::Zero:
      break;
    case InitialKind::Step: {
      const double h = spec.ic.step_height > 0.0 ? spec.ic.step_height : u_star;
      const double edge = g.x0 + spec.ic.step_fraction * spec.length;
      for (std::size_t i = 0; i < g.n; ++i) {
        if (g.x(i) <= edge) f0.u[i] = h;
      }
      break;
    }
    case InitialKind::ExpDecay:
      for (std::size_t i = 0; i < g.n; ++i) {
        const double val = spec.ic.amplitude * std::exp(-spec.ic.decay_rate * (g.x(i) - g.x0));
        f0.u[i] = std::min(val, u_star);  // keep v0 = v*(u0) below the pole
      }
      break;
    case InitialKind::Custom:
      if (spec.ic.custom_u.size() != g.n) {
        throw config_error("wave experiment: custom initial data length != grid size");
      }
      f0.u = spec.ic.custom_u;
      break;
  }
  f0.v.resize(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    f0.v[i] = equilibrium_tension(f0.u[i], spec.params);
  }

  SimProblem prob;
  prob.params = spec.params;
  prob.grid = g;
  prob.node_alpha.assign(g.n, spec.params.alpha);
  prob.cfl = spec.cfl;

  const std::vector<double> times = snapshot_times(spec.t_end, spec.snapshot_count);
  const Trajectory traj = run(prob, f0, spec.t_end, times);

  WaveExperimentResult res;
  res.u_star = u_star;
  res.level = level;
  res.potential_growth = wave_potential(u_star, spec.params);
  res.potential_net = net_wave_potential(u_star, spec.params);
  res.clip_count = traj.clip_count;
  res.u0_sup = *std::max_element(f0.u.begin(), f0.u.end());
  res.u_sup_overall = 0.0;
  for (const FieldStats& s : traj.stats) {
    res.u_sup_overall = std::max(res.u_sup_overall, s.u_max);
  }

  for (const Fields& snap : traj.snapshots) {
    double pos;
    try {
      pos = front_position(snap.u, g, level);
    } catch (const numerical_error&) {
      continue;  // front not formed yet (or extinguished); skip this sample
    }
    res.trace.times.push_back(snap.t);
    res.trace.positions.push_back(pos);
  }
  if (res.trace.times.size() < 10) {
    throw numerical_error("wave experiment: front tracked in fewer than 10 snapshots");
  }
  res.estimate = estimate_speed(res.trace, spec.stationary_tol);

  // The measurement window must stay clear of the wall the front is moving
  // toward; behind an advancing front sits the flat excited plateau, which a
  // no-flux wall matches exactly.
  for (std::size_t i = 0; i < res.trace.times.size(); ++i) {
    if (res.trace.times[i] < res.estimate.transient_cut) continue;
    const double pos = res.trace.positions[i];
    const bool too_close = res.estimate.c >= 0.0
                               ? pos > g.x_end() - spec.boundary_margin
                               : pos < g.x0 + spec.boundary_margin;
    if (too_close || pos < g.x0 + 2.0 * g.dx || pos > g.x_end() - 2.0 * g.dx) {
      throw config_error(
          "wave experiment: front entered the boundary margin during measurement; "
          "increase the domain length beyond " +
          std::to_string(spec.length));
    }
  }

  res.prev_snapshot = traj.snapshots[traj.snapshots.size() - 2];
  res.last_snapshot = traj.snapshots.back();
  // Align the last two profiles by their front positions and compare shapes.
  {
    const Fields& a = res.prev_snapshot;
    const Fields& b = res.last_snapshot;
    double shift = 0.0;
    bool have_shift = true;
    try {
      shift = front_position(b.u, g, level) - front_position(a.u, g, level);
    } catch (const numerical_error&) {
      have_shift = false;
    }
    double worst = 0.0;
    if (have_shift) {
      for (std::size_t i = 0; i < g.n; ++i) {
        const double xs = g.x(i) - shift;  // sample a at the pre-shift location
        if (xs < g.x0 + spec.boundary_margin || xs > g.x_end() - spec.boundary_margin) {
          continue;
        }
        const double fi = (xs - g.x0) / g.dx;
        const std::size_t j = static_cast<std::size_t>(fi);
        const double w = fi - static_cast<double>(j);
        const double av = a.u[j] * (1.0 - w) + a.u[std::min(j + 1, g.n - 1)] * w;
        worst = std::max(worst, std::abs(b.u[i] - av));
      }
      res.profile_change = worst;
      res.translation_invariant = worst < 1e-3;
    } else {
      res.profile_change = std::numeric_limits<double>::quiet_NaN();
      res.translation_invariant = false;
    }
  }
  return res;
}

std::vector<std::pair<double, WaveSpeedEstimate>> speed_vs_initial_decay(
    const WaveExperimentSpec& base, const std::vector<double>& decay_rates) {
  std::vector<std::pair<double, WaveSpeedEstimate>> out(decay_rates.size());
  for (std::size_t i = 0; i < decay_rates.size(); ++i) {
    WaveExperimentSpec spec = base;
    spec.ic.kind = InitialKind::ExpDecay;
    spec.ic.decay_rate = decay_rates[i];
    const WaveExperimentResult res = run_wave_experiment(spec);
    out[i] = {decay_rates[i], res.estimate};
  }
  return out;
}

ExtinctionReport extinction_experiment(const ExtinctionSpec& spec) {
  validate(spec.params);
  Grid1D g;
  g.n = spec.n;
  g.dx = spec.length / static_cast<double>(spec.n - 1);
  g.x0 = spec.x0;
  g.boundary = Boundary::NoFlux;
  validate(g);

  Fields f0;
  f0.u.assign(g.n, spec.u0_level);
  const double v_rest = equilibrium_tension(0.0, spec.params);
  f0.v.assign(g.n, v_rest);

  SimProblem prob;
  prob.params = spec.params;
  prob.grid = g;
  prob.node_alpha.assign(g.n, spec.params.alpha);
  prob.shocks = spec.shocks;
  prob.cfl = spec.cfl;

  std::vector<double> times;
  for (double t = 0.0; t <= spec.t_end + 1e-12; t += spec.snapshot_dt) times.push_back(t);
  const Trajectory traj = run(prob, f0, spec.t_end, times);

  ExtinctionReport rep;
  double prev_sup = -1.0;
  std::vector<double> fit_t, fit_log;
  for (const Fields& snap : traj.snapshots) {
    double sup = 0.0;
    for (double u : snap.u) sup = std::max(sup, u);
    rep.sup_trace.emplace_back(snap.t, sup);
    if (prev_sup >= 0.0 && sup > prev_sup * (1.0 + 1e-9) + 1e-12) rep.decayed = false;
    prev_sup = sup;
    if (snap.t >= spec.fit_t0 - 1e-12 && snap.t <= spec.fit_t1 + 1e-12 && sup > 0.0) {
      fit_t.push_back(snap.t);
      fit_log.push_back(std::log(sup));
    }
  }
  if (fit_t.size() >= 2) {
    const LineFit fit = fit_line(fit_t, fit_log);
    rep.tau_hat = -fit.slope;
    rep.fit_r2 = fit.r2;
  } else {
    rep.tau_hat = std::numeric_limits<double>::quiet_NaN();
    rep.fit_r2 = 0.0;
  }
  const Fields& last = traj.snapshots.back();
  rep.final_u_sup = *std::max_element(last.u.begin(), last.u.end());
  double verr = 0.0;
  for (double v : last.v) verr = std::max(verr, std::abs(v - v_rest));
  rep.final_v_err = verr;
  return rep;
}

}  // namespace riotwave
