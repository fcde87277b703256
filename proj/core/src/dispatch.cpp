#include "riotwave/dispatch.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "riotwave/equilibria.hpp"
#include "riotwave/hetero.hpp"
#include "riotwave/version.hpp"

namespace riotwave {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

class OutputWriter {
 public:
  explicit OutputWriter(const std::string& dir) : dir_(dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw io_error("cannot create output directory '" + dir + "': " + ec.message());
  }

  void write(const std::string& name, const std::string& content) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file '" + path.string() + "'");
    out << content;
    out.close();
    if (!out) throw io_error("failed writing output file '" + path.string() + "'");
    entries_.push_back({name, content.size()});
  }

  const std::vector<ManifestEntry>& entries() const { return entries_; }

 private:
  fs::path dir_;
  std::vector<ManifestEntry> entries_;
};

std::vector<double> schedule_times(const ScheduleSpec& s, int default_count = 11) {
  if (!s.snapshot_times.empty()) return s.snapshot_times;
  const int count = s.snapshots >= 2 ? s.snapshots : default_count;
  std::vector<double> times(count);
  for (int i = 0; i < count; ++i) {
    times[i] = s.t_end * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return times;
}

EnvironmentProfile environment_profile(const ExperimentConfig& cfg, const Grid1D& g) {
  switch (cfg.env_kind) {
    case EnvKind::Uniform:
      return EnvironmentProfile::uniform(cfg.params.alpha, g.x0, g.x_end());
    case EnvKind::Periodic:
      return cfg.periodic.tile(g.x0);
    case EnvKind::Gap:
      return cfg.gap.profile(g.x0, g.x_end());
  }
  throw config_error("unknown environment kind");
}

KernelSpec load_kernel(const ExperimentConfig& cfg, const Grid1D& g) {
  if (cfg.kernel.kind != KernelSpec::Kind::General) return cfg.kernel;
  std::ifstream in(cfg.kernel_matrix_file);
  if (!in) throw io_error("cannot open kernel matrix file '" + cfg.kernel_matrix_file + "'");
  std::vector<double> entries;
  double x;
  while (in >> x) entries.push_back(x);
  if (entries.size() != g.n * g.n) {
    throw config_error("kernel matrix file holds " + std::to_string(entries.size()) +
                       " numbers, expected n*n = " + std::to_string(g.n * g.n));
  }
  return KernelSpec::general(std::move(entries));
}

double excited_or_default(const Params& p, double fallback) {
  try {
    const auto states = find_steady_states(p);
    if (states.size() >= 2) return states.back().u;
  } catch (const std::exception&) {
  }
  return fallback;
}

Fields build_initial(const ExperimentConfig& cfg, const Grid1D& g) {
  Fields f;
  f.u.assign(g.n, 0.0);
  f.v.assign(g.n, 0.0);
  switch (cfg.initial.kind) {
    case InitialSpecKind::Zero:
      return f;  // both fields literally zero; tension relaxes on its own
    case InitialSpecKind::Step: {
      double h = cfg.initial.step_height;
      if (h < 0.0) {
        const auto states = find_steady_states(cfg.params);
        if (states.size() < 2) {
          throw config_error(
              "initial step: no excited state exists; set initial.height explicitly");
        }
        h = states.back().u;
      }
      const double edge = g.x0 + cfg.initial.step_fraction * g.extent();
      for (std::size_t i = 0; i < g.n; ++i) {
        if (g.x(i) <= edge) f.u[i] = h;
      }
      break;
    }
    case InitialSpecKind::ExpDecay: {
      // Cap so v0 = v*(u0) stays below the tension pole.
      const double cap =
          excited_or_default(cfg.params, 0.9 * std::min(1.0, pole_activity(cfg.params)));
      for (std::size_t i = 0; i < g.n; ++i) {
        const double val =
            cfg.initial.amplitude * std::exp(-cfg.initial.decay_rate * (g.x(i) - g.x0));
        f.u[i] = std::min(val, cap);
      }
      break;
    }
    case InitialSpecKind::FromFile: {
      std::ifstream in(cfg.initial.path);
      if (!in) throw io_error("cannot open initial data file '" + cfg.initial.path + "'");
      for (std::size_t i = 0; i < g.n; ++i) {
        if (!(in >> f.u[i] >> f.v[i])) {
          throw config_error("initial data file ended before " + std::to_string(g.n) +
                             " rows");
        }
      }
      return f;  // tension given explicitly
    }
  }
  for (std::size_t i = 0; i < g.n; ++i) {
    f.v[i] = equilibrium_tension(f.u[i], cfg.params);
  }
  return f;
}

json config_echo(const ExperimentConfig& cfg) { return json::parse(serialize(cfg)); }

// ---- experiment handlers ------------------------------------------------

void run_simulate(const ExperimentConfig& cfg, OutputWriter& out,
                  std::vector<std::string>& warnings) {
  const Grid1D g = cfg.grid.grid();
  SimProblem prob;
  prob.params = cfg.params;
  prob.grid = g;
  prob.node_alpha = environment_profile(cfg, g).node_alphas(g);
  prob.kernel = load_kernel(cfg, g);
  prob.shocks = cfg.shocks;
  prob.cfl = cfg.cfl;

  const Fields f0 = build_initial(cfg, g);
  const std::vector<double> times = schedule_times(cfg.schedule);
  const Trajectory traj = run(prob, f0, cfg.schedule.t_end, times);

  std::string csv = "t,x,u,v\n";
  for (const Fields& snap : traj.snapshots) {
    for (std::size_t i = 0; i < g.n; ++i) {
      csv += num(snap.t);
      csv += ',';
      csv += num(g.x(i));
      csv += ',';
      csv += num(snap.u[i]);
      csv += ',';
      csv += num(snap.v[i]);
      csv += '\n';
    }
  }
  out.write("snapshots.csv", csv);

  json stats = json::array();
  for (const FieldStats& s : traj.stats) {
    stats.push_back({{"t", s.t},
                     {"u_min", s.u_min},
                     {"u_max", s.u_max},
                     {"v_min", s.v_min},
                     {"v_max", s.v_max}});
  }
  json summary;
  summary["config"] = config_echo(cfg);
  summary["kernel_row_bound"] = traj.kernel_bound;
  summary["snapshot_stats"] = stats;
  summary["clip_count"] = traj.clip_count;
  summary["steps"] = traj.steps;
  summary["dt"] = traj.dt;
  out.write("summary.json", summary.dump(2) + "\n");

  // space-time blocks: one block per snapshot, columns x u v
  std::string dat = "# activity/tension space-time snapshots; blocks separated by blank lines\n";
  for (const Fields& snap : traj.snapshots) {
    dat += "# t = " + num(snap.t) + "\n";
    for (std::size_t i = 0; i < g.n; ++i) {
      dat += num(g.x(i));
      dat += ' ';
      dat += num(snap.u[i]);
      dat += ' ';
      dat += num(snap.v[i]);
      dat += '\n';
    }
    dat += "\n";
  }
  out.write("plot_spacetime.dat", dat);

  if (traj.clip_count > 0) {
    warnings.push_back("negative round-off clipped " + std::to_string(traj.clip_count) +
                       " times");
  }
}

void run_steady_states(const ExperimentConfig& cfg, OutputWriter& out) {
  const std::vector<SteadyState> states = find_steady_states(cfg.params);
  json arr = json::array();
  for (const SteadyState& s : states) {
    arr.push_back({{"u", s.u},
                   {"v", s.v},
                   {"trace", s.trace},
                   {"det", s.det},
                   {"stability", to_string(s.stability)}});
  }
  json doc;
  doc["config"] = config_echo(cfg);
  doc["states"] = arr;
  doc["count"] = states.size();
  out.write("steady_states.json", doc.dump(2) + "\n");

  std::string csv = "u,v,trace,det,stability\n";
  for (const SteadyState& s : states) {
    csv += num(s.u) + "," + num(s.v) + "," + num(s.trace) + "," + num(s.det) + "," +
           to_string(s.stability) + "\n";
  }
  out.write("steady_states.csv", csv);

  // nullcline reaction profile for plotting: u, H(u), v*(u)
  const double hi = std::min(1.0, pole_activity(cfg.params)) - 1e-9;
  std::string dat = "# nullcline reaction: u  H(u)  v*(u)\n";
  const int samples = 512;
  for (int i = 0; i <= samples; ++i) {
    const double u = hi * i / samples;
    dat += num(u) + " " + num(nullcline_reaction(u, cfg.params)) + " " +
           num(equilibrium_tension(u, cfg.params)) + "\n";
  }
  out.write("plot_nullcline.dat", dat);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < count; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return v;
}

int region_code(const BifurcationCell& c) {
  if (!c.ok) return 0;
  switch (c.label.region) {
    case Region::I: return 1;
    case Region::IIa: return 2;
    case Region::IIb: return 3;
    case Region::IIIa: return 4;
    case Region::IIIb: return 5;
    case Region::OnBeta1: return 6;
  }
  return 0;
}

void run_bifurcate(const ExperimentConfig& cfg, OutputWriter& out,
                   std::vector<std::string>& warnings) {
  const BifurcateOpts& b = cfg.bifurcate;
  const std::vector<double> rho = linspace(b.rho_min, b.rho_max, b.rho_count);
  const std::vector<double> beta = linspace(b.beta_min, b.beta_max, b.beta_count);
  const BifurcationMap map = sweep_bifurcation(rho, beta, cfg.params);

  std::string csv = "rho,beta,region,n_states\n";
  for (std::size_t ir = 0; ir < rho.size(); ++ir) {
    for (std::size_t ib = 0; ib < beta.size(); ++ib) {
      const BifurcationCell& c = map.at(ir, ib);
      csv += num(rho[ir]) + "," + num(beta[ib]) + ",";
      csv += c.ok ? to_string(c.label.region) : "error";
      csv += "," + std::to_string(c.ok ? c.label.n_states : 0) + "\n";
    }
  }
  out.write("bifurcation.csv", csv);

  // boundary polylines: midpoints between adjacent cells of differing region
  json boundaries = json::object();
  auto add_boundary = [&](const BifurcationCell& a, const BifurcationCell& c, double x,
                          double y) {
    if (!a.ok || !c.ok || a.label.region == c.label.region) return;
    std::string key = std::string(to_string(a.label.region)) + "|" +
                      to_string(c.label.region);
    boundaries[key].push_back({x, y});
  };
  for (std::size_t ir = 0; ir < rho.size(); ++ir) {
    for (std::size_t ib = 0; ib + 1 < beta.size(); ++ib) {
      add_boundary(map.at(ir, ib), map.at(ir, ib + 1), rho[ir],
                   0.5 * (beta[ib] + beta[ib + 1]));
    }
  }
  for (std::size_t ib = 0; ib < beta.size(); ++ib) {
    for (std::size_t ir = 0; ir + 1 < rho.size(); ++ir) {
      add_boundary(map.at(ir, ib), map.at(ir + 1, ib),
                   0.5 * (rho[ir] + rho[ir + 1]), beta[ib]);
    }
  }

  const auto violations = map.count_monotonicity_violations();
  json vjson = json::array();
  for (const auto& [r, bb] : violations) vjson.push_back({r, bb});
  if (!violations.empty()) {
    warnings.push_back("state count drops with rho at " +
                       std::to_string(violations.size()) + " grid cells");
  }
  json doc;
  doc["config"] = config_echo(cfg);
  doc["boundaries"] = boundaries;
  doc["count_monotonicity_violations"] = vjson;
  out.write("bifurcation_summary.json", doc.dump(2) + "\n");

  // matrix format: one row per beta, one column per rho, region codes
  std::string dat =
      "# bifurcation region map; rows: beta ascending, cols: rho ascending\n"
      "# codes: 0 error, 1 I, 2 IIa, 3 IIb, 4 IIIa, 5 IIIb, 6 on-beta1\n";
  for (std::size_t ib = 0; ib < beta.size(); ++ib) {
    for (std::size_t ir = 0; ir < rho.size(); ++ir) {
      dat += std::to_string(region_code(map.at(ir, ib)));
      dat += ir + 1 < rho.size() ? ' ' : '\n';
    }
  }
  out.write("plot_region_map.dat", dat);
}

WaveExperimentSpec wave_spec_from(const ExperimentConfig& cfg) {
  WaveExperimentSpec spec;
  spec.params = cfg.params;
  spec.dx = cfg.grid.dx;
  spec.x0 = cfg.grid.x0;
  spec.length = cfg.grid.grid().extent();
  spec.t_end = cfg.schedule.t_end;
  spec.snapshot_count = cfg.schedule.snapshots >= 10
                            ? static_cast<std::size_t>(cfg.schedule.snapshots)
                            : 81;
  spec.level = cfg.wave.level;
  spec.stationary_tol = cfg.wave.stationary_tol;
  spec.boundary_margin = cfg.wave.boundary_margin;
  spec.cfl = cfg.cfl;
  switch (cfg.initial.kind) {
    case InitialSpecKind::Zero:
      spec.ic.kind = InitialKind::Zero;
      break;
    case InitialSpecKind::Step:
      spec.ic.kind = InitialKind::Step;
      break;
    case InitialSpecKind::ExpDecay:
      spec.ic.kind = InitialKind::ExpDecay;
      break;
    case InitialSpecKind::FromFile:
      throw config_error("wave experiment: from_file initial data is not supported");
  }
  spec.ic.step_height = cfg.initial.step_height;
  spec.ic.step_fraction = cfg.initial.step_fraction;
  spec.ic.decay_rate = cfg.initial.decay_rate;
  spec.ic.amplitude = cfg.initial.amplitude;
  return spec;
}

std::string trace_csv(const FrontTrace& trace) {
  std::string csv = "t,x_front\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    csv += num(trace.times[i]) + "," + num(trace.positions[i]) + "\n";
  }
  return csv;
}

std::string trace_dat(const FrontTrace& trace, const char* header) {
  std::string dat = std::string("# ") + header + ": t  x_front\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    dat += num(trace.times[i]) + " " + num(trace.positions[i]) + "\n";
  }
  return dat;
}

void run_wave_speed(const ExperimentConfig& cfg, OutputWriter& out,
                    std::vector<std::string>& warnings) {
  const WaveExperimentResult res = run_wave_experiment(wave_spec_from(cfg));

  json doc;
  doc["config"] = config_echo(cfg);
  doc["c"] = res.estimate.c;
  doc["r2"] = res.estimate.r2;
  doc["c_stderr"] = res.estimate.c_stderr;
  doc["classification"] = to_string(res.estimate.classification);
  doc["transient_cut"] = res.estimate.transient_cut;
  doc["samples_used"] = res.estimate.samples_used;
  doc["u_star"] = res.u_star;
  doc["level"] = res.level;
  doc["potential_growth"] = res.potential_growth;
  doc["potential_net"] = res.potential_net;
  doc["profile_change"] = res.profile_change;
  doc["translation_invariant"] = res.translation_invariant;
  out.write("wave_report.json", doc.dump(2) + "\n");

  out.write("front_trace.csv", trace_csv(res.trace));
  out.write("plot_front.dat", trace_dat(res.trace, "front position vs time"));

  const Grid1D g{static_cast<std::size_t>(std::lround(
                     wave_spec_from(cfg).length / cfg.grid.dx)) + 1,
                 cfg.grid.dx, cfg.grid.x0, Boundary::NoFlux};
  std::string csv = "x,u_prev,v_prev,u_last,v_last\n";
  std::string dat = "# late-time activity profiles: x  u(t_prev)  u(t_last)\n";
  for (std::size_t i = 0; i < res.last_snapshot.u.size(); ++i) {
    csv += num(g.x(i)) + "," + num(res.prev_snapshot.u[i]) + "," +
           num(res.prev_snapshot.v[i]) + "," + num(res.last_snapshot.u[i]) + "," +
           num(res.last_snapshot.v[i]) + "\n";
    dat += num(g.x(i)) + " " + num(res.prev_snapshot.u[i]) + " " +
           num(res.last_snapshot.u[i]) + "\n";
  }
  out.write("profiles.csv", csv);
  out.write("plot_profiles.dat", dat);

  if (res.clip_count > 0) {
    warnings.push_back("negative round-off clipped " + std::to_string(res.clip_count) +
                       " times");
  }
  if (!res.translation_invariant) {
    warnings.push_back("late profiles not translation-invariant (change " +
                       num(res.profile_change) + ")");
  }
}

void run_speed_vs_decay(const ExperimentConfig& cfg, OutputWriter& out) {
  WaveExperimentSpec base = wave_spec_from(cfg);
  base.ic.kind = InitialKind::ExpDecay;
  base.ic.amplitude = cfg.decay.amplitude;
  const auto speeds = speed_vs_initial_decay(base, cfg.decay.decay_rates);

  std::string csv = "decay_rate,c,r2,c_stderr,classification\n";
  std::string dat = "# front speed vs initial decay rate: k  c\n";
  json arr = json::array();
  for (const auto& [k, est] : speeds) {
    csv += num(k) + "," + num(est.c) + "," + num(est.r2) + "," + num(est.c_stderr) +
           "," + to_string(est.classification) + "\n";
    dat += num(k) + " " + num(est.c) + "\n";
    arr.push_back({{"decay_rate", k},
                   {"c", est.c},
                   {"r2", est.r2},
                   {"c_stderr", est.c_stderr},
                   {"classification", to_string(est.classification)}});
  }
  out.write("speeds.csv", csv);
  out.write("plot_speeds.dat", dat);
  json doc;
  doc["config"] = config_echo(cfg);
  doc["speeds"] = arr;
  out.write("speeds.json", doc.dump(2) + "\n");
}

void run_extinction(const ExperimentConfig& cfg, OutputWriter& out) {
  ExtinctionSpec spec;
  spec.params = cfg.params;
  spec.n = cfg.grid.n;
  spec.length = cfg.grid.grid().extent();
  spec.x0 = cfg.grid.x0;
  spec.t_end = cfg.schedule.t_end;
  spec.u0_level = cfg.extinction.u0_level;
  spec.shocks = cfg.shocks;
  spec.fit_t0 = cfg.extinction.fit_t0;
  spec.fit_t1 = cfg.extinction.fit_t1;
  spec.cfl = cfg.cfl;
  const ExtinctionReport rep = extinction_experiment(spec);

  json doc;
  doc["config"] = config_echo(cfg);
  doc["tau_hat"] = rep.tau_hat;
  doc["fit_r2"] = rep.fit_r2;
  doc["final_u_sup"] = rep.final_u_sup;
  doc["final_v_err"] = rep.final_v_err;
  doc["decayed"] = rep.decayed;
  out.write("extinction.json", doc.dump(2) + "\n");

  std::string csv = "t,sup_u\n";
  std::string dat = "# activity sup-norm decay: t  sup_u\n";
  for (const auto& [t, sup] : rep.sup_trace) {
    csv += num(t) + "," + num(sup) + "\n";
    dat += num(t) + " " + num(sup) + "\n";
  }
  out.write("sup_norms.csv", csv);
  out.write("plot_decay.dat", dat);
}

void run_eigen(const ExperimentConfig& cfg, OutputWriter& out) {
  const Grid1D g = cfg.grid.grid();
  std::vector<double> alphas;
  if (cfg.env_kind == EnvKind::Uniform) {
    alphas.assign(g.n, cfg.params.alpha);
  } else {
    const EnvironmentProfile profile = cfg.periodic.one_period(g.x0);
    alphas.resize(g.n);
    for (std::size_t i = 0; i < g.n; ++i) alphas[i] = profile.alpha_at(g.x(i));
  }
  const EigenResult res =
      principal_eigenvalue(cfg.params, alphas, g, cfg.eigen.linearize_at_zero_tension);

  json doc;
  doc["config"] = config_echo(cfg);
  doc["lambda"] = res.lambda;
  doc["residual"] = res.residual;
  doc["iterations"] = res.iterations;
  doc["phi_sup"] = res.phi_sup;
  doc["psi_sup"] = res.psi_sup;
  doc["grid"] = {{"n", g.n}, {"dx", g.dx}};
  doc["unstable"] = res.lambda < 0.0;
  out.write("eigen.json", doc.dump(2) + "\n");

  std::string csv = "x,phi,psi\n";
  std::string dat = "# principal eigenfunction pair: x  phi  psi\n";
  for (std::size_t i = 0; i < g.n; ++i) {
    csv += num(g.x(i)) + "," + num(res.phi[i]) + "," + num(res.psi[i]) + "\n";
    dat += num(g.x(i)) + " " + num(res.phi[i]) + " " + num(res.psi[i]) + "\n";
  }
  out.write("eigenfunctions.csv", csv);
  out.write("plot_eigenfunctions.dat", dat);
}

void run_gap_scan(const ExperimentConfig& cfg, OutputWriter& out) {
  GapSpec base;
  base.params = cfg.params;
  base.env = cfg.gap;
  base.x0 = cfg.grid.x0;
  base.x_end = cfg.grid.grid().x_end();
  base.dx = cfg.grid.dx;
  base.t_end = cfg.schedule.t_end;
  base.cfl = cfg.cfl;
  const CriticalGap res = find_critical_gap(base, cfg.gap_scan.gap_start,
                                            cfg.gap_scan.width_lo, cfg.gap_scan.width_hi);

  std::string csv = "width,verdict,arrival_time\n";
  std::string dat = "# gap scan: width  crossed(1/0)  arrival_time\n";
  for (const GapScanRow& row : res.probes) {
    csv += num(row.width) + "," + (row.crossed ? "crossed" : "blocked") + "," +
           (row.crossed ? num(row.arrival_time) : "") + "\n";
    dat += num(row.width) + " " + (row.crossed ? "1" : "0") + " " +
           num(row.crossed ? row.arrival_time : -1.0) + "\n";
  }
  out.write("gap_scan.csv", csv);
  out.write("plot_gap_scan.dat", dat);

  json doc;
  doc["config"] = config_echo(cfg);
  doc["critical_width"] = res.width;
  doc["crossed_below"] = res.verify_below.crossed;
  doc["blocked_above"] = !res.verify_above.crossed;
  out.write("gap_report.json", doc.dump(2) + "\n");
}

void run_pulsating(const ExperimentConfig& cfg, OutputWriter& out) {
  PulsatingSpec spec;
  spec.params = cfg.params;
  spec.env = cfg.periodic;
  spec.dx = cfg.grid.dx;
  spec.t_end = cfg.schedule.t_end;
  spec.snapshot_dt = cfg.pulsating.snapshot_dt;
  spec.excited_span = cfg.pulsating.excited_span;
  spec.stationary_tol = cfg.wave.stationary_tol;
  spec.cfl = cfg.cfl;
  const PulsatingReport rep = pulsating_front_experiment(spec);

  json doc;
  doc["config"] = config_echo(cfg);
  doc["verdict"] = to_string(rep.verdict);
  doc["mean_speed"] = rep.mean_speed;
  doc["r2"] = rep.r2;
  doc["oscillation_period"] = rep.oscillation_period;
  doc["expected_period"] = rep.expected_period;
  doc["period_mismatch"] = rep.period_mismatch;
  out.write("pulsating.json", doc.dump(2) + "\n");

  out.write("front_trace.csv", trace_csv(rep.trace));
  out.write("plot_front.dat", trace_dat(rep.trace, "pulsating front position vs time"));
}

}  // namespace

RunManifest dispatch(const ExperimentConfig& cfg, const std::string& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  validate(cfg);
  OutputWriter out(out_dir);
  RunManifest manifest;
  manifest.config_hash = config_hash(cfg);
  manifest.tool_version = RIOTWAVE_VERSION;

  switch (cfg.experiment) {
    case ExperimentKind::Simulate:
      run_simulate(cfg, out, manifest.warnings);
      break;
    case ExperimentKind::SteadyStates:
      run_steady_states(cfg, out);
      break;
    case ExperimentKind::Bifurcate:
      run_bifurcate(cfg, out, manifest.warnings);
      break;
    case ExperimentKind::WaveSpeed:
      run_wave_speed(cfg, out, manifest.warnings);
      break;
    case ExperimentKind::SpeedVsDecay:
      run_speed_vs_decay(cfg, out);
      break;
    case ExperimentKind::Extinction:
      run_extinction(cfg, out);
      break;
    case ExperimentKind::Eigen:
      run_eigen(cfg, out);
      break;
    case ExperimentKind::GapScan:
      run_gap_scan(cfg, out);
      break;
    case ExperimentKind::Pulsating:
      run_pulsating(cfg, out);
      break;
  }

  manifest.outputs = out.entries();
  manifest.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();

  json doc;
  doc["config_hash"] = manifest.config_hash;
  doc["tool_version"] = manifest.tool_version;
  json outputs = json::array();
  for (const ManifestEntry& e : manifest.outputs) {
    outputs.push_back({{"path", e.path}, {"bytes", e.bytes}});
  }
  doc["outputs"] = outputs;
  doc["wall_ms"] = manifest.wall_ms;
  doc["warnings"] = manifest.warnings;

  const fs::path manifest_path = fs::path(out_dir) / "manifest.json";
  std::ofstream mf(manifest_path, std::ios::binary);
  if (!mf) throw io_error("cannot write manifest '" + manifest_path.string() + "'");
  mf << doc.dump(2) << "\n";
  return manifest;
}

}  // namespace riotwave
