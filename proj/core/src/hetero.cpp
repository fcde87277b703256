#include "riotwave/hetero.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "riotwave/equilibria.hpp"

namespace riotwave {

const char* to_string(PersistVerdict v) {
  switch (v) {
    case PersistVerdict::Persist: return "persist";
    case PersistVerdict::Vanish: return "vanish";
    case PersistVerdict::Marginal: return "marginal";
  }
  return "?";
}

const char* to_string(PulsatingVerdictKind v) {
  switch (v) {
    case PulsatingVerdictKind::Pulsating: return "pulsating";
    case PulsatingVerdictKind::Blocked: return "blocked";
  }
  return "?";
}

namespace {

// Dense discretization of the linearized periodic operator (2n x 2n).
Eigen::MatrixXd assemble_operator(const Params& p, const std::vector<double>& alpha,
                                  const Grid1D& g, bool linearize_at_zero_tension) {
  const std::size_t n = g.n;
  const double inv_dx2 = 1.0 / (g.dx * g.dx);
  const double v_lin =
      linearize_at_zero_tension ? 0.0 : equilibrium_tension(0.0, p);
  const double r0 = transition_rate(v_lin, p);
  const double coupling = -decay_factor_deriv(0.0, p) * v_lin;  // Psi_u >= 0
  const double psi_v = -(decay_factor(0.0, p) - p.k2);          // -(1 - k2)

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im = (i + n - 1) % n;
    const std::size_t ip = (i + 1) % n;
    const double phi_u = r0 * ignition_growth_slope(0.0, alpha[i]).value - 1.0;
    const double phi_v = transition_rate_deriv(v_lin, p) * ignition_growth(0.0, alpha[i]);

    A(i, i) += 2.0 * inv_dx2 - phi_u;
    A(i, im) += -inv_dx2;
    A(i, ip) += -inv_dx2;
    A(i, n + i) += -phi_v;  // identically zero for this model, kept for shape

    A(n + i, n + i) += 2.0 * p.D * inv_dx2 - psi_v;
    A(n + i, n + im) += -p.D * inv_dx2;
    A(n + i, n + ip) += -p.D * inv_dx2;
    A(n + i, i) += -coupling;
  }
  return A;
}

}  // namespace

EigenResult principal_eigenvalue(const Params& p, const std::vector<double>& node_alpha,
                                 const Grid1D& g, bool linearize_at_zero_tension) {
  validate(p);
  validate(g);
  if (g.boundary != Boundary::Periodic) {
    throw config_error("principal_eigenvalue: grid must be periodic");
  }
  if (node_alpha.size() != g.n) {
    throw config_error("principal_eigenvalue: node_alpha length != grid size");
  }
  const std::size_t n = g.n;
  const Eigen::MatrixXd A =
      assemble_operator(p, node_alpha, g, linearize_at_zero_tension);

  // Spectrum lower bound: the activity block dominates from below by the
  // most unstable local growth rate; the tension block sits above 1 - k2.
  const double v_lin = linearize_at_zero_tension ? 0.0 : equilibrium_tension(0.0, p);
  double max_phi_u = -1.0;
  for (double a : node_alpha) {
    max_phi_u = std::max(
        max_phi_u, transition_rate(v_lin, p) * ignition_growth_slope(0.0, a).value - 1.0);
  }
  const double lower_bound = std::min(-max_phi_u, 1.0 - p.k2);
  const double sigma0 = lower_bound - 1.0;

  Eigen::MatrixXd shifted = A - sigma0 * Eigen::MatrixXd::Identity(2 * n, 2 * n);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(shifted);

  Eigen::VectorXd x = Eigen::VectorXd::Ones(2 * n);
  double lambda = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  int it = 0;
  constexpr int kMaxIters = 100000;
  for (; it < kMaxIters; ++it) {
    Eigen::VectorXd y = lu.solve(x);
    const double scale = y.cwiseAbs().maxCoeff();
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw numerical_error("principal_eigenvalue: iteration degenerated");
    }
    x = y / scale;
    const Eigen::VectorXd ax = A * x;
    lambda = x.dot(ax) / x.dot(x);
    residual = (ax - lambda * x).cwiseAbs().maxCoeff();
    if (residual < 1e-9) break;
  }
  if (residual >= 1e-8) {
    throw numerical_error("principal_eigenvalue: no convergence after " +
                          std::to_string(it) + " iterations, residual " +
                          std::to_string(residual));
  }

  EigenResult res;
  res.lambda = lambda;
  res.iterations = it + 1;
  res.phi.resize(n);
  res.psi.resize(n);
  // Joint normalization: one scaling degree of freedom, applied so the
  // larger component has sup-norm 1.
  const double norm = x.cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < n; ++i) {
    res.phi[i] = x(i) / norm;
    res.psi[i] = x(n + i) / norm;
  }
  const Eigen::VectorXd xs = x / norm;
  res.residual = ((A * xs) - lambda * xs).cwiseAbs().maxCoeff();
  res.phi_sup = 0.0;
  res.psi_sup = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    res.phi_sup = std::max(res.phi_sup, std::abs(res.phi[i]));
    res.psi_sup = std::max(res.psi_sup, std::abs(res.psi[i]));
  }
  return res;
}

EigenResult principal_eigenvalue(const Params& p, const PeriodicEnv& env, std::size_t n,
                                 bool linearize_at_zero_tension) {
  env.check();
  Grid1D g;
  g.n = n;
  g.dx = env.period / static_cast<double>(n);
  g.x0 = 0.0;
  g.boundary = Boundary::Periodic;
  const EnvironmentProfile profile = env.one_period(0.0);
  std::vector<double> alphas(n);
  for (std::size_t i = 0; i < n; ++i) alphas[i] = profile.alpha_at(g.x(i));
  return principal_eigenvalue(p, alphas, g, linearize_at_zero_tension);
}

double eigenvalue_extrapolated(const Params& p, const PeriodicEnv& env, std::size_t n) {
  const double coarse = principal_eigenvalue(p, env, n).lambda;
  const double fine = principal_eigenvalue(p, env, 2 * n).lambda;
  return fine + (fine - coarse) / 3.0;
}

InstabilityCheck instability_check(const Params& p, const PeriodicEnv& env,
                                   std::size_t n) {
  InstabilityCheck out;
  out.lambda = principal_eigenvalue(p, env, n).lambda;
  if (out.lambda < -1e-8) {
    out.predicted = PersistVerdict::Persist;
  } else if (out.lambda > 1e-8) {
    out.predicted = PersistVerdict::Vanish;
  } else {
    out.predicted = PersistVerdict::Marginal;
  }
  return out;
}

PersistenceOutcome persistence_experiment(const PersistenceSpec& spec) {
  spec.env.check();
  const std::size_t n = spec.n_per_period * static_cast<std::size_t>(spec.repetitions);
  Grid1D g;
  g.n = n;
  g.dx = spec.env.period / static_cast<double>(spec.n_per_period);
  g.x0 = 0.0;
  g.boundary = Boundary::Periodic;
  validate(g);

  PeriodicEnv tiled = spec.env;
  tiled.repetitions = spec.repetitions;
  const EnvironmentProfile profile = tiled.tile(0.0);
  std::vector<double> alphas(n);
  for (std::size_t i = 0; i < n; ++i) alphas[i] = profile.alpha_at(g.x(i));

  SimProblem prob;
  prob.params = spec.params;
  prob.grid = g;
  prob.node_alpha = alphas;
  prob.cfl = spec.cfl;

  Fields f;
  f.u.assign(n, spec.seed_level);
  f.v.assign(n, equilibrium_tension(0.0, spec.params));

  PersistenceOutcome out;
  double t = 0.0;
  while (t < spec.t_max) {
    const Trajectory traj = run(prob, f, spec.chunk, {spec.chunk});
    Fields next = traj.snapshots.back();
    t += spec.chunk;
    next.t = t;

    double du = 0.0, dv = 0.0, sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      du = std::max(du, std::abs(next.u[i] - f.u[i]));
      dv = std::max(dv, std::abs(next.v[i] - f.v[i]));
      sup = std::max(sup, next.u[i]);
    }
    f = next;
    if (sup < spec.vanish_tol) {
      out.converged = true;
      out.persisted = false;
      break;
    }
    if (du < spec.converge_tol && dv < spec.converge_tol) {
      out.converged = true;
      out.persisted = sup > 1e-4;
      break;
    }
  }
  out.t_reached = t;
  out.final_state = f;
  out.final_sup_u = *std::max_element(f.u.begin(), f.u.end());
  double perr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + spec.n_per_period) % n;
    perr = std::max(perr, std::abs(f.u[i] - f.u[j]));
  }
  out.periodicity_error = perr;
  return out;
}

double dominant_period(const std::vector<double>& res, double dt, double expected) {
  const std::size_t m = res.size();
  if (m < 8 || !(expected > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  const long lag_lo = std::max<long>(2, std::lround(0.4 * expected / dt));
  const long lag_hi = std::min<long>(static_cast<long>(m) - 4,
                                     std::lround(1.8 * expected / dt));
  if (lag_hi <= lag_lo) return std::numeric_limits<double>::quiet_NaN();

  auto autocorr = [&](long lag) {
    double acc = 0.0;
    long cnt = 0;
    for (std::size_t j = 0; j + lag < m; ++j) {
      acc += res[j] * res[j + lag];
      ++cnt;
    }
    return cnt > 0 ? acc / cnt : 0.0;
  };

  long best = lag_lo;
  double best_val = -std::numeric_limits<double>::infinity();
  for (long lag = lag_lo; lag <= lag_hi; ++lag) {
    const double c = autocorr(lag);
    if (c > best_val) {
      best_val = c;
      best = lag;
    }
  }
  double refined = static_cast<double>(best);
  if (best > lag_lo && best < lag_hi) {
    const double cm = autocorr(best - 1);
    const double c0 = best_val;
    const double cp = autocorr(best + 1);
    const double denom = cm - 2.0 * c0 + cp;
    if (std::abs(denom) > 1e-300) refined += 0.5 * (cm - cp) / denom;
  }
  return refined * dt;
}

PulsatingReport pulsating_front_experiment(const PulsatingSpec& spec) {
  spec.env.check();
  const double length = spec.env.period * spec.env.repetitions;
  Grid1D g;
  g.n = static_cast<std::size_t>(std::lround(length / spec.dx)) + 1;
  g.dx = spec.dx;
  g.x0 = 0.0;
  g.boundary = Boundary::NoFlux;
  validate(g);

  const EnvironmentProfile profile = spec.env.tile(0.0);
  std::vector<double> alphas(g.n);
  for (std::size_t i = 0; i < g.n; ++i) alphas[i] = profile.alpha_at(g.x(i));

  // Reference excited level: the uniform system at the most permissive patch.
  double alpha_min = 1.0;
  for (const auto& patch : spec.env.patches) alpha_min = std::min(alpha_min, patch.alpha);
  Params ref = spec.params;
  ref.alpha = alpha_min;
  const std::vector<SteadyState> states = find_steady_states(ref);
  if (states.size() < 2) {
    throw config_error("pulsating experiment: most permissive patch admits no front");
  }
  const double u_star = states.back().u;
  const double level = spec.level > 0.0 ? spec.level : 0.5 * u_star;

  Fields f0;
  f0.u.assign(g.n, 0.0);
  for (std::size_t i = 0; i < g.n; ++i) {
    if (g.x(i) <= g.x0 + spec.excited_span) f0.u[i] = u_star;
  }
  f0.v.resize(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    f0.v[i] = equilibrium_tension(f0.u[i], spec.params);
  }

  SimProblem prob;
  prob.params = spec.params;
  prob.grid = g;
  prob.node_alpha = alphas;
  prob.cfl = spec.cfl;

  std::vector<double> times;
  for (double t = 0.0; t <= spec.t_end + 1e-12; t += spec.snapshot_dt) times.push_back(t);
  const Trajectory traj = run(prob, f0, spec.t_end, times);

  PulsatingReport rep;
  rep.u_star = u_star;
  for (const Fields& snap : traj.snapshots) {
    try {
      const double pos = front_position(snap.u, g, level);
      rep.trace.times.push_back(snap.t);
      rep.trace.positions.push_back(pos);
    } catch (const numerical_error&) {
      // Blocked fronts can retreat below the level inside a censored patch;
      // keep whatever samples exist.
    }
  }
  if (rep.trace.times.size() < 10) {
    rep.verdict = PulsatingVerdictKind::Blocked;
    return rep;
  }

  const WaveSpeedEstimate est = estimate_speed(rep.trace, spec.stationary_tol);
  rep.mean_speed = est.c;
  rep.r2 = est.r2;
  rep.expected_period = est.c > 0.0 ? spec.env.period / est.c
                                    : std::numeric_limits<double>::quiet_NaN();

  // A front whose position settles is blocked.
  const std::size_t nq = rep.trace.positions.size() / 4;
  double late_lo = std::numeric_limits<double>::infinity();
  double late_hi = -late_lo;
  for (std::size_t i = rep.trace.positions.size() - nq; i < rep.trace.positions.size();
       ++i) {
    late_lo = std::min(late_lo, rep.trace.positions[i]);
    late_hi = std::max(late_hi, rep.trace.positions[i]);
  }
  const bool settled = (late_hi - late_lo) < g.dx;
  if (settled || est.classification != FrontClass::Advancing) {
    rep.verdict = PulsatingVerdictKind::Blocked;
    return rep;
  }

  // Detrend the post-transient samples and look for L-periodicity in the
  // comoving frame.
  std::size_t first = 0;
  while (first < rep.trace.times.size() && rep.trace.times[first] < est.transient_cut) {
    ++first;
  }
  const LineFit fit = fit_line(rep.trace.times, rep.trace.positions, first);
  std::vector<double> resid;
  for (std::size_t i = first; i < rep.trace.times.size(); ++i) {
    resid.push_back(rep.trace.positions[i] -
                    (fit.intercept + fit.slope * rep.trace.times[i]));
  }
  rep.oscillation_period = dominant_period(resid, spec.snapshot_dt, rep.expected_period);
  rep.period_mismatch = std::abs(rep.oscillation_period - rep.expected_period) /
                        rep.expected_period;
  rep.verdict = (std::isfinite(rep.period_mismatch) && rep.period_mismatch <= 0.10)
                    ? PulsatingVerdictKind::Pulsating
                    : PulsatingVerdictKind::Blocked;
  return rep;
}

GapOutcome gap_experiment(const GapSpec& spec) {
  spec.env.check(spec.x0, spec.x_end);
  Grid1D g;
  g.n = static_cast<std::size_t>(std::lround((spec.x_end - spec.x0) / spec.dx)) + 1;
  g.dx = spec.dx;
  g.x0 = spec.x0;
  g.boundary = Boundary::NoFlux;
  validate(g);

  const EnvironmentProfile profile = spec.env.profile(spec.x0, spec.x_end);
  std::vector<double> alphas(g.n);
  for (std::size_t i = 0; i < g.n; ++i) alphas[i] = profile.alpha_at(g.x(i));

  Params p1 = spec.params;
  p1.alpha = spec.env.alpha1;
  const std::vector<SteadyState> s1_states = find_steady_states(p1);
  if (s1_states.size() < 2) {
    throw config_error("gap experiment: originating region admits no excited state");
  }
  const double u1 = s1_states.back().u;

  Params p3 = spec.params;
  p3.alpha = spec.env.alpha2;
  const std::vector<SteadyState> s3_states = find_steady_states(p3);
  if (s3_states.size() < 2) {
    throw config_error("gap experiment: far region admits no excited state");
  }
  const double threshold = 0.5 * s3_states.back().u;

  Fields f0;
  f0.u.assign(g.n, 0.0);
  const double edge = spec.x0 + spec.excited_fraction * (spec.env.s1_end - spec.x0);
  for (std::size_t i = 0; i < g.n; ++i) {
    if (g.x(i) <= edge) f0.u[i] = u1;
  }
  f0.v.resize(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    f0.v[i] = equilibrium_tension(f0.u[i], spec.params);
  }

  SimProblem prob;
  prob.params = spec.params;
  prob.grid = g;
  prob.node_alpha = alphas;
  prob.cfl = spec.cfl;

  std::vector<double> times;
  for (double t = 0.0; t <= spec.t_end + 1e-12; t += spec.snapshot_dt) times.push_back(t);
  const Trajectory traj = run(prob, f0, spec.t_end, times);

  GapOutcome out;
  out.threshold = threshold;
  for (const Fields& snap : traj.snapshots) {
    double s3_max = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
      if (g.x(i) >= spec.env.s2_end) s3_max = std::max(s3_max, snap.u[i]);
    }
    if (!out.crossed && s3_max > threshold) {
      out.crossed = true;
      out.arrival_time = snap.t;
    }
  }
  const Fields& last = traj.snapshots.back();
  for (std::size_t i = 0; i < g.n; ++i) {
    if (g.x(i) >= spec.env.s2_end) out.final_s3_max = std::max(out.final_s3_max, last.u[i]);
  }
  return out;
}

CriticalGap find_critical_gap(const GapSpec& base, double gap_start, double width_lo,
                              double width_hi) {
  if (!(width_lo > 0.0 && width_hi > width_lo)) {
    throw config_error("find_critical_gap: need 0 < width_lo < width_hi");
  }
  CriticalGap result;
  auto probe = [&](double w) {
    GapSpec spec = base;
    spec.env.s1_end = gap_start;
    spec.env.s2_end = gap_start + w;
    const GapOutcome out = gap_experiment(spec);
    result.probes.push_back({w, out.crossed, out.arrival_time});
    return out;
  };

  const GapOutcome lo_out = probe(width_lo);
  const GapOutcome hi_out = probe(width_hi);
  if (!lo_out.crossed || hi_out.crossed) {
    throw config_error(
        "find_critical_gap: no crossing->blocking transition over the width range "
        "(crossed at low end: " + std::string(lo_out.crossed ? "yes" : "no") +
        ", at high end: " + std::string(hi_out.crossed ? "yes" : "no") + ")");
  }

  double lo = width_lo, hi = width_hi;
  while (hi - lo > base.dx) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid).crossed) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result.width = 0.5 * (lo + hi);

  result.verify_below = probe(result.width - 2.0 * base.dx);
  result.verify_above = probe(result.width + 2.0 * base.dx);

  std::sort(result.probes.begin(), result.probes.end(),
            [](const GapScanRow& a, const GapScanRow& b) { return a.width < b.width; });
  bool seen_blocked = false;
  for (const GapScanRow& row : result.probes) {
    if (!row.crossed) seen_blocked = true;
    if (seen_blocked && row.crossed) {
      throw numerical_error(
          "find_critical_gap: non-monotone verdicts over width (crossing above a "
          "blocking width); refine dx or extend t_end");
    }
  }
  return result;
}

}  // namespace riotwave
