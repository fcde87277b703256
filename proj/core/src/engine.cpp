#include "riotwave/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace riotwave {

namespace {

constexpr double kClipFloor = -1e-12;
constexpr double kTimeTol = 1e-9;

class Integrator {
 public:
  explicit Integrator(const SimProblem& prob) : prob_(prob), n_(prob.grid.n) {
    validate(prob_.grid);
    validate(prob_.params);
    if (prob_.node_alpha.size() != n_) {
      throw config_error("engine: node_alpha length != grid size");
    }
    for (double a : prob_.node_alpha) {
      if (!(a >= 0.0 && a <= 1.0)) {
        throw config_error("engine: node alpha must lie in [0,1]");
      }
    }
    if (!(prob_.cfl > 0.0 && prob_.cfl <= 0.4)) {
      throw config_error("engine: cfl factor must lie in (0, 0.4]");
    }
    du_.resize(n_);
    dv_.resize(n_);
    mid_u_.resize(n_);
    mid_v_.resize(n_);
    use_kernel_ = prob_.terms.nonlocal && prob_.kernel.kind != KernelSpec::Kind::None &&
                  prob_.params.k != 0.0;
  }

  double dt_limit() const {
    return 0.4 * prob_.grid.dx * prob_.grid.dx / std::max(1.0, prob_.params.D);
  }

  void rhs(const std::vector<double>& u, const std::vector<double>& v,
           std::vector<double>& du, std::vector<double>& dv) const {
    const Params& p = prob_.params;
    const Grid1D& g = prob_.grid;
    const double inv_dx2 = 1.0 / (g.dx * g.dx);
    const bool diffuse = prob_.terms.diffusion;
    const bool react = prob_.terms.reactions;
    const bool periodic = g.boundary == Boundary::Periodic;

    std::vector<double> nl;
    if (use_kernel_) nl = nonlocal_term(v, prob_.kernel, g);

    for (std::size_t i = 0; i < n_; ++i) {
      double lap_u = 0.0, lap_v = 0.0;
      if (diffuse) {
        std::size_t im, ip;
        if (i == 0) {
          im = periodic ? n_ - 1 : 1;
          ip = 1;
        } else if (i + 1 == n_) {
          im = n_ - 2;
          ip = periodic ? 0 : n_ - 2;
        } else {
          im = i - 1;
          ip = i + 1;
        }
        lap_u = (u[im] - 2.0 * u[i] + u[ip]) * inv_dx2;
        if (p.D != 0.0) lap_v = (v[im] - 2.0 * v[i] + v[ip]) * inv_dx2;
      }
      double phi = 0.0, psi = 0.0;
      if (react) {
        // transients may undershoot zero by round-off; the nonlinearities
        // are only defined for nonnegative activity
        const double un = u[i] > 0.0 ? u[i] : 0.0;
        phi = transition_rate(v[i], p) * ignition_growth(un, prob_.node_alpha[i]) - u[i];
        psi = -(decay_factor(un, p) - p.k2) * v[i] + 1.0;
      }
      du[i] = lap_u + phi;
      dv[i] = p.D * lap_v + psi;
      if (use_kernel_) dv[i] += p.k * nl[i];
    }
  }

  Fields step(const Fields& f, double dt, long* clipped) {
    if (f.u.size() != n_ || f.v.size() != n_) {
      throw config_error("engine: field length != grid size");
    }
    if (dt > dt_limit() * (1.0 + 1e-12)) {
      throw config_error("engine: dt " + std::to_string(dt) +
                         " violates the stability bound " + std::to_string(dt_limit()));
    }
    rhs(f.u, f.v, du_, dv_);
    const double half = 0.5 * dt;
    for (std::size_t i = 0; i < n_; ++i) {
      mid_u_[i] = f.u[i] + half * du_[i];
      mid_v_[i] = f.v[i] + half * dv_[i];
    }
    rhs(mid_u_, mid_v_, du_, dv_);

    Fields out;
    out.t = f.t + dt;
    out.u.resize(n_);
    out.v.resize(n_);
    long clips = 0;
    bool finite = true;
    for (std::size_t i = 0; i < n_; ++i) {
      double un = f.u[i] + dt * du_[i];
      double vn = f.v[i] + dt * dv_[i];
      if (un < 0.0 && un >= kClipFloor) {
        un = 0.0;
        ++clips;
      }
      if (vn < 0.0 && vn >= kClipFloor) {
        vn = 0.0;
        ++clips;
      }
      finite = finite && std::isfinite(un) && std::isfinite(vn);
      out.u[i] = un;
      out.v[i] = vn;
    }
    if (!finite) {
      double umax = 0.0, vmax = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        umax = std::max(umax, std::abs(f.u[i]));
        vmax = std::max(vmax, std::abs(f.v[i]));
      }
      throw numerical_error("engine: solution blew up at t = " + std::to_string(out.t) +
                            " (previous max |u| = " + std::to_string(umax) +
                            ", max |v| = " + std::to_string(vmax) + ")");
    }
    if (clipped) *clipped += clips;
    return out;
  }

 private:
  const SimProblem& prob_;
  std::size_t n_;
  bool use_kernel_ = false;
  mutable std::vector<double> du_, dv_;
  std::vector<double> mid_u_, mid_v_;
};

FieldStats field_stats(const Fields& f) {
  FieldStats s;
  s.t = f.t;
  s.u_min = *std::min_element(f.u.begin(), f.u.end());
  s.u_max = *std::max_element(f.u.begin(), f.u.end());
  s.v_min = *std::min_element(f.v.begin(), f.v.end());
  s.v_max = *std::max_element(f.v.begin(), f.v.end());
  return s;
}

}  // namespace

double stable_dt(const Grid1D& g, const Params& p, double cfl) {
  if (!(cfl > 0.0 && cfl <= 0.4)) {
    throw config_error("engine: cfl factor must lie in (0, 0.4]");
  }
  return cfl * g.dx * g.dx / std::max(1.0, p.D);
}

void apply_shock(Fields& f, const ShockEvent& e, const Grid1D& g) {
  const std::size_t j = g.nearest(e.x);
  if (f.v.size() != g.n) throw config_error("apply_shock: field length != grid size");
  f.v[j] += e.amplitude / (g.dx * g.weight(j));
}

Fields step(const Fields& f, const SimProblem& prob, double dt, long* clipped) {
  Integrator integ(prob);
  return integ.step(f, dt, clipped);
}

Trajectory run(const SimProblem& prob, const Fields& initial, double t_end,
               const std::vector<double>& snapshot_times) {
  Integrator integ(prob);
  if (!(t_end >= 0.0)) throw config_error("engine: t_end must be >= 0");
  for (double ts : snapshot_times) {
    if (ts < 0.0 || ts > t_end + kTimeTol) {
      throw config_error("engine: snapshot times must lie in [0, t_end]");
    }
  }
  for (const ShockEvent& s : prob.shocks) {
    if (s.time < 0.0 || s.time > t_end + kTimeTol) {
      throw config_error("engine: shock times must lie in [0, t_end]");
    }
    (void)prob.grid.nearest(s.x);  // validates the location
  }

  // Event times: every instant where a shock fires or a snapshot is taken.
  std::vector<double> events = snapshot_times;
  for (const ShockEvent& s : prob.shocks) events.push_back(s.time);
  events.push_back(t_end);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end(),
                           [](double a, double b) { return std::abs(a - b) < kTimeTol; }),
               events.end());

  Trajectory traj;
  traj.kernel_bound = kernel_row_bound(prob.kernel, prob.grid);
  const double dt_base = stable_dt(prob.grid, prob.params, prob.cfl);
  traj.dt = dt_base;

  Fields f = initial;
  f.t = 0.0;
  auto process_event = [&](double te) {
    for (const ShockEvent& s : prob.shocks) {
      if (std::abs(s.time - te) < kTimeTol) apply_shock(f, s, prob.grid);
    }
    for (double ts : snapshot_times) {
      if (std::abs(ts - te) < kTimeTol) {
        traj.snapshots.push_back(f);
        traj.stats.push_back(field_stats(f));
        break;
      }
    }
  };

  double t = 0.0;
  if (!events.empty() && std::abs(events.front()) < kTimeTol) {
    process_event(0.0);
    events.erase(events.begin());
  }
  for (double te : events) {
    while (t < te - kTimeTol) {
      double dt = std::min(dt_base, te - t);
      if (te - t - dt < 1e-12 * dt_base) dt = te - t;  // avoid sliver steps
      f = integ.step(f, dt, &traj.clip_count);
      ++traj.steps;
      t += dt;
      f.t = t;
    }
    t = te;
    f.t = te;
    process_event(te);
  }
  return traj;
}

}  // namespace riotwave
