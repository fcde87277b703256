#include "riotwave/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace riotwave {

using nlohmann::json;

namespace {

void check_keys(const json& j, const char* section,
                std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw config_error("config: unknown key '" + it.key() + "' in section '" +
                         section + "'");
    }
  }
}

double get_num(const json& j, const char* key, double def) {
  if (!j.contains(key)) return def;
  if (!j[key].is_number()) {
    throw config_error(std::string("config: '") + key + "' must be a number");
  }
  return j[key].get<double>();
}

long get_int(const json& j, const char* key, long def) {
  if (!j.contains(key)) return def;
  if (!j[key].is_number_integer()) {
    throw config_error(std::string("config: '") + key + "' must be an integer");
  }
  return j[key].get<long>();
}

bool get_bool(const json& j, const char* key, bool def) {
  if (!j.contains(key)) return def;
  if (!j[key].is_boolean()) {
    throw config_error(std::string("config: '") + key + "' must be a boolean");
  }
  return j[key].get<bool>();
}

std::string get_str(const json& j, const char* key, const std::string& def) {
  if (!j.contains(key)) return def;
  if (!j[key].is_string()) {
    throw config_error(std::string("config: '") + key + "' must be a string");
  }
  return j[key].get<std::string>();
}

const struct {
  ExperimentKind kind;
  const char* name;
} kExperimentNames[] = {
    {ExperimentKind::Simulate, "simulate"},
    {ExperimentKind::SteadyStates, "steady_states"},
    {ExperimentKind::Bifurcate, "bifurcate"},
    {ExperimentKind::WaveSpeed, "wave_speed"},
    {ExperimentKind::SpeedVsDecay, "speed_vs_decay"},
    {ExperimentKind::Extinction, "extinction"},
    {ExperimentKind::Eigen, "eigen"},
    {ExperimentKind::GapScan, "gap_scan"},
    {ExperimentKind::Pulsating, "pulsating"},
};

ExperimentKind experiment_from(const std::string& s) {
  for (const auto& e : kExperimentNames) {
    if (s == e.name) return e.kind;
  }
  throw config_error("config: unknown experiment '" + s + "'");
}

}  // namespace

const char* to_string(ExperimentKind k) {
  for (const auto& e : kExperimentNames) {
    if (k == e.kind) return e.name;
  }
  return "?";
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error("config: parse error in '" + origin + "': " + e.what());
  }
  if (!j.is_object()) throw config_error("config: top level must be an object");

  check_keys(j, "top level",
             {"experiment", "params", "grid", "environment", "kernel", "initial",
              "shocks", "schedule", "cfl", "seed", "bifurcate", "wave",
              "speed_vs_decay", "extinction", "eigen", "gap_scan", "pulsating"});

  ExperimentConfig cfg;
  if (!j.contains("experiment") || !j["experiment"].is_string()) {
    throw config_error("config: 'experiment' (string) is required");
  }
  cfg.experiment = experiment_from(j["experiment"].get<std::string>());

  if (!j.contains("params") || !j["params"].is_object()) {
    throw config_error("config: 'params' section is required");
  }
  {
    const json& p = j["params"];
    check_keys(p, "params",
               {"rho", "beta", "a_bar", "k", "k2", "D", "m_bar", "p", "alpha",
                "A_tilde"});
    Params d;
    cfg.params.rho = get_num(p, "rho", d.rho);
    cfg.params.beta = get_num(p, "beta", d.beta);
    cfg.params.a_bar = get_num(p, "a_bar", d.a_bar);
    cfg.params.k = get_num(p, "k", d.k);
    cfg.params.k2 = get_num(p, "k2", d.k2);
    cfg.params.D = get_num(p, "D", d.D);
    cfg.params.m_bar = get_num(p, "m_bar", d.m_bar);
    cfg.params.p = get_num(p, "p", d.p);
    cfg.params.alpha = get_num(p, "alpha", d.alpha);
    cfg.params.A_tilde = get_num(p, "A_tilde", d.A_tilde);
  }

  if (j.contains("grid")) {
    const json& g = j["grid"];
    check_keys(g, "grid", {"n", "dx", "x0", "boundary"});
    cfg.grid.n = static_cast<std::size_t>(get_int(g, "n", (long)cfg.grid.n));
    cfg.grid.dx = get_num(g, "dx", cfg.grid.dx);
    cfg.grid.x0 = get_num(g, "x0", cfg.grid.x0);
    const std::string b = get_str(g, "boundary", "noflux");
    if (b == "noflux") {
      cfg.grid.boundary = Boundary::NoFlux;
    } else if (b == "periodic") {
      cfg.grid.boundary = Boundary::Periodic;
    } else {
      throw config_error("config: boundary must be 'noflux' or 'periodic'");
    }
  }

  if (j.contains("environment")) {
    const json& e = j["environment"];
    check_keys(e, "environment",
               {"type", "period", "patches", "repetitions", "s1_end", "s2_end",
                "alpha1", "alpha2"});
    const std::string type = get_str(e, "type", "uniform");
    if (type == "uniform") {
      cfg.env_kind = EnvKind::Uniform;
    } else if (type == "periodic") {
      cfg.env_kind = EnvKind::Periodic;
      cfg.periodic.period = get_num(e, "period", 1.0);
      cfg.periodic.repetitions = static_cast<int>(get_int(e, "repetitions", 1));
      cfg.periodic.patches.clear();
      if (!e.contains("patches") || !e["patches"].is_array()) {
        throw config_error("config: periodic environment requires 'patches'");
      }
      for (const json& pj : e["patches"]) {
        check_keys(pj, "environment.patches[]", {"from", "to", "alpha"});
        PeriodicEnv::Patch patch;
        patch.from = get_num(pj, "from", 0.0);
        patch.to = get_num(pj, "to", 0.0);
        patch.alpha = get_num(pj, "alpha", 0.0);
        cfg.periodic.patches.push_back(patch);
      }
    } else if (type == "gap") {
      cfg.env_kind = EnvKind::Gap;
      cfg.gap.s1_end = get_num(e, "s1_end", cfg.gap.s1_end);
      cfg.gap.s2_end = get_num(e, "s2_end", cfg.gap.s2_end);
      cfg.gap.alpha1 = get_num(e, "alpha1", cfg.gap.alpha1);
      cfg.gap.alpha2 = get_num(e, "alpha2", cfg.gap.alpha2);
    } else {
      throw config_error("config: environment type must be uniform, periodic or gap");
    }
  }

  if (j.contains("kernel")) {
    const json& k = j["kernel"];
    check_keys(k, "kernel", {"kind", "sigma", "radius", "matrix_file"});
    const std::string kind = get_str(k, "kind", "none");
    if (kind == "none") {
      cfg.kernel = KernelSpec::none();
    } else if (kind == "gaussian") {
      cfg.kernel = KernelSpec::gaussian(get_num(k, "sigma", 1.0));
    } else if (kind == "tophat") {
      cfg.kernel = KernelSpec::top_hat(get_num(k, "radius", 1.0));
    } else if (kind == "general") {
      cfg.kernel.kind = KernelSpec::Kind::General;
      cfg.kernel_matrix_file = get_str(k, "matrix_file", "");
      if (cfg.kernel_matrix_file.empty()) {
        throw config_error("config: general kernel requires 'matrix_file'");
      }
    } else {
      throw config_error("config: kernel kind must be none, gaussian, tophat or general");
    }
  }

  if (j.contains("initial")) {
    const json& i = j["initial"];
    check_keys(i, "initial",
               {"kind", "height", "fraction", "decay_rate", "amplitude", "path"});
    const std::string kind = get_str(i, "kind", "zero");
    if (kind == "zero") {
      cfg.initial.kind = InitialSpecKind::Zero;
    } else if (kind == "step") {
      cfg.initial.kind = InitialSpecKind::Step;
    } else if (kind == "exp_decay") {
      cfg.initial.kind = InitialSpecKind::ExpDecay;
    } else if (kind == "from_file") {
      cfg.initial.kind = InitialSpecKind::FromFile;
    } else {
      throw config_error("config: initial kind must be zero, step, exp_decay or from_file");
    }
    cfg.initial.step_height = get_num(i, "height", cfg.initial.step_height);
    cfg.initial.step_fraction = get_num(i, "fraction", cfg.initial.step_fraction);
    cfg.initial.decay_rate = get_num(i, "decay_rate", cfg.initial.decay_rate);
    cfg.initial.amplitude = get_num(i, "amplitude", cfg.initial.amplitude);
    cfg.initial.path = get_str(i, "path", "");
    if (cfg.initial.kind == InitialSpecKind::FromFile && cfg.initial.path.empty()) {
      throw config_error("config: from_file initial data requires 'path'");
    }
  }

  if (j.contains("shocks")) {
    if (!j["shocks"].is_array()) throw config_error("config: 'shocks' must be an array");
    for (const json& sj : j["shocks"]) {
      check_keys(sj, "shocks[]", {"t", "x", "amplitude"});
      ShockEvent s;
      s.time = get_num(sj, "t", 0.0);
      s.x = get_num(sj, "x", 0.0);
      s.amplitude = get_num(sj, "amplitude", cfg.params.A_tilde);
      cfg.shocks.push_back(s);
    }
  }

  if (j.contains("schedule")) {
    const json& s = j["schedule"];
    check_keys(s, "schedule", {"t_end", "snapshot_times", "snapshots"});
    cfg.schedule.t_end = get_num(s, "t_end", cfg.schedule.t_end);
    cfg.schedule.snapshots = static_cast<int>(get_int(s, "snapshots", 0));
    if (s.contains("snapshot_times")) {
      if (!s["snapshot_times"].is_array()) {
        throw config_error("config: 'snapshot_times' must be an array");
      }
      for (const json& t : s["snapshot_times"]) {
        cfg.schedule.snapshot_times.push_back(t.get<double>());
      }
    }
  }

  cfg.cfl = get_num(j, "cfl", cfg.cfl);
  cfg.seed = get_int(j, "seed", cfg.seed);

  if (j.contains("bifurcate")) {
    const json& b = j["bifurcate"];
    check_keys(b, "bifurcate",
               {"rho_min", "rho_max", "rho_count", "beta_min", "beta_max", "beta_count"});
    cfg.bifurcate.rho_min = get_num(b, "rho_min", cfg.bifurcate.rho_min);
    cfg.bifurcate.rho_max = get_num(b, "rho_max", cfg.bifurcate.rho_max);
    cfg.bifurcate.beta_min = get_num(b, "beta_min", cfg.bifurcate.beta_min);
    cfg.bifurcate.beta_max = get_num(b, "beta_max", cfg.bifurcate.beta_max);
    cfg.bifurcate.rho_count =
        static_cast<std::size_t>(get_int(b, "rho_count", (long)cfg.bifurcate.rho_count));
    cfg.bifurcate.beta_count =
        static_cast<std::size_t>(get_int(b, "beta_count", (long)cfg.bifurcate.beta_count));
  }
  if (j.contains("wave")) {
    const json& w = j["wave"];
    check_keys(w, "wave", {"level", "stationary_tol", "boundary_margin"});
    cfg.wave.level = get_num(w, "level", cfg.wave.level);
    cfg.wave.stationary_tol = get_num(w, "stationary_tol", cfg.wave.stationary_tol);
    cfg.wave.boundary_margin = get_num(w, "boundary_margin", cfg.wave.boundary_margin);
  }
  if (j.contains("speed_vs_decay")) {
    const json& d = j["speed_vs_decay"];
    check_keys(d, "speed_vs_decay", {"decay_rates", "amplitude"});
    if (d.contains("decay_rates")) {
      cfg.decay.decay_rates.clear();
      for (const json& r : d["decay_rates"]) cfg.decay.decay_rates.push_back(r.get<double>());
    }
    cfg.decay.amplitude = get_num(d, "amplitude", cfg.decay.amplitude);
  }
  if (j.contains("extinction")) {
    const json& e = j["extinction"];
    check_keys(e, "extinction", {"fit_t0", "fit_t1", "u0_level"});
    cfg.extinction.fit_t0 = get_num(e, "fit_t0", cfg.extinction.fit_t0);
    cfg.extinction.fit_t1 = get_num(e, "fit_t1", cfg.extinction.fit_t1);
    cfg.extinction.u0_level = get_num(e, "u0_level", cfg.extinction.u0_level);
  }
  if (j.contains("eigen")) {
    const json& e = j["eigen"];
    check_keys(e, "eigen", {"linearize_at_zero_tension"});
    cfg.eigen.linearize_at_zero_tension =
        get_bool(e, "linearize_at_zero_tension", cfg.eigen.linearize_at_zero_tension);
  }
  if (j.contains("gap_scan")) {
    const json& g = j["gap_scan"];
    check_keys(g, "gap_scan", {"gap_start", "width_lo", "width_hi"});
    cfg.gap_scan.gap_start = get_num(g, "gap_start", cfg.gap_scan.gap_start);
    cfg.gap_scan.width_lo = get_num(g, "width_lo", cfg.gap_scan.width_lo);
    cfg.gap_scan.width_hi = get_num(g, "width_hi", cfg.gap_scan.width_hi);
  }
  if (j.contains("pulsating")) {
    const json& p = j["pulsating"];
    check_keys(p, "pulsating", {"excited_span", "snapshot_dt"});
    cfg.pulsating.excited_span = get_num(p, "excited_span", cfg.pulsating.excited_span);
    cfg.pulsating.snapshot_dt = get_num(p, "snapshot_dt", cfg.pulsating.snapshot_dt);
  }

  validate(cfg);
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  validate(cfg.params);
  validate(cfg.grid.grid());
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 0.4)) {
    throw config_error("config: cfl must lie in (0, 0.4]");
  }

  const Grid1D g = cfg.grid.grid();
  if (cfg.env_kind == EnvKind::Periodic) {
    cfg.periodic.check();
    const double tiled = cfg.periodic.period * cfg.periodic.repetitions;
    if (tiled < g.extent() - 1e-9) {
      throw config_error("config: periodic environment does not cover the grid extent");
    }
  }
  if (cfg.env_kind == EnvKind::Gap) {
    cfg.gap.check(g.x0, g.x_end());
  }

  if (!cfg.schedule.snapshot_times.empty()) {
    if (!std::is_sorted(cfg.schedule.snapshot_times.begin(),
                        cfg.schedule.snapshot_times.end())) {
      throw config_error("config: snapshot_times must be ascending");
    }
    if (cfg.schedule.snapshot_times.front() < 0.0 ||
        cfg.schedule.snapshot_times.back() > cfg.schedule.t_end + 1e-12) {
      throw config_error("config: snapshot times must lie in [0, t_end]");
    }
  }
  if (!(cfg.schedule.t_end >= 0.0)) throw config_error("config: t_end must be >= 0");

  for (const ShockEvent& s : cfg.shocks) {
    if (s.time < 0.0 || s.time > cfg.schedule.t_end + 1e-12) {
      throw config_error("config: shock times must lie in [0, t_end]");
    }
    if (s.x < g.x0 - 1e-9 || s.x > g.x_end() + 1e-9) {
      throw config_error("config: shock location lies outside the grid");
    }
    if (s.amplitude < 0.0) throw config_error("config: shock amplitude must be >= 0");
  }

  if (cfg.experiment == ExperimentKind::Eigen) {
    if (cfg.grid.boundary != Boundary::Periodic) {
      throw config_error("config: eigen experiment requires a periodic boundary");
    }
    if (cfg.env_kind == EnvKind::Gap) {
      throw config_error("config: eigen experiment requires a uniform or periodic environment");
    }
    if (cfg.env_kind == EnvKind::Periodic) {
      const double extent = static_cast<double>(cfg.grid.n) * cfg.grid.dx;
      if (std::abs(extent - cfg.periodic.period) > 1e-9 * std::max(1.0, cfg.periodic.period)) {
        throw config_error(
            "config: eigen experiment grid must span exactly one environment period");
      }
    }
  }
  if (cfg.experiment == ExperimentKind::GapScan || cfg.env_kind == EnvKind::Gap) {
    if (cfg.experiment == ExperimentKind::GapScan && cfg.env_kind != EnvKind::Gap) {
      throw config_error("config: gap_scan experiment requires a gap environment");
    }
  }
  if (cfg.experiment == ExperimentKind::Pulsating && cfg.env_kind != EnvKind::Periodic) {
    throw config_error("config: pulsating experiment requires a periodic environment");
  }
  if (cfg.experiment == ExperimentKind::Bifurcate) {
    const BifurcateOpts& b = cfg.bifurcate;
    if (!(b.rho_min > 0.0 && b.rho_max > b.rho_min && b.beta_min > 0.0 &&
          b.beta_max > b.beta_min && b.rho_count >= 1 && b.beta_count >= 1)) {
      throw config_error("config: malformed bifurcate grid specification");
    }
  }
  if (cfg.experiment == ExperimentKind::GapScan) {
    const GapScanOpts& s = cfg.gap_scan;
    if (!(s.width_lo > 0.0 && s.width_hi > s.width_lo)) {
      throw config_error("config: gap_scan needs 0 < width_lo < width_hi");
    }
    if (s.gap_start + s.width_hi >= g.x_end()) {
      throw config_error("config: gap_scan widths exceed the domain");
    }
  }
}

namespace {

json patches_json(const PeriodicEnv& env) {
  json arr = json::array();
  for (const auto& p : env.patches) {
    arr.push_back({{"from", p.from}, {"to", p.to}, {"alpha", p.alpha}});
  }
  return arr;
}

}  // namespace

std::string serialize(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = to_string(cfg.experiment);
  j["params"] = {{"rho", cfg.params.rho},     {"beta", cfg.params.beta},
                 {"a_bar", cfg.params.a_bar}, {"k", cfg.params.k},
                 {"k2", cfg.params.k2},       {"D", cfg.params.D},
                 {"m_bar", cfg.params.m_bar}, {"p", cfg.params.p},
                 {"alpha", cfg.params.alpha}, {"A_tilde", cfg.params.A_tilde}};
  j["grid"] = {{"n", cfg.grid.n},
               {"dx", cfg.grid.dx},
               {"x0", cfg.grid.x0},
               {"boundary", cfg.grid.boundary == Boundary::Periodic ? "periodic" : "noflux"}};
  switch (cfg.env_kind) {
    case EnvKind::Uniform:
      j["environment"] = {{"type", "uniform"}};
      break;
    case EnvKind::Periodic:
      j["environment"] = {{"type", "periodic"},
                          {"period", cfg.periodic.period},
                          {"repetitions", cfg.periodic.repetitions},
                          {"patches", patches_json(cfg.periodic)}};
      break;
    case EnvKind::Gap:
      j["environment"] = {{"type", "gap"},
                          {"s1_end", cfg.gap.s1_end},
                          {"s2_end", cfg.gap.s2_end},
                          {"alpha1", cfg.gap.alpha1},
                          {"alpha2", cfg.gap.alpha2}};
      break;
  }
  switch (cfg.kernel.kind) {
    case KernelSpec::Kind::None:
      j["kernel"] = {{"kind", "none"}};
      break;
    case KernelSpec::Kind::Gaussian:
      j["kernel"] = {{"kind", "gaussian"}, {"sigma", cfg.kernel.sigma}};
      break;
    case KernelSpec::Kind::TopHat:
      j["kernel"] = {{"kind", "tophat"}, {"radius", cfg.kernel.radius}};
      break;
    case KernelSpec::Kind::General:
      j["kernel"] = {{"kind", "general"}, {"matrix_file", cfg.kernel_matrix_file}};
      break;
  }
  {
    json i;
    switch (cfg.initial.kind) {
      case InitialSpecKind::Zero: i["kind"] = "zero"; break;
      case InitialSpecKind::Step: i["kind"] = "step"; break;
      case InitialSpecKind::ExpDecay: i["kind"] = "exp_decay"; break;
      case InitialSpecKind::FromFile: i["kind"] = "from_file"; break;
    }
    i["height"] = cfg.initial.step_height;
    i["fraction"] = cfg.initial.step_fraction;
    i["decay_rate"] = cfg.initial.decay_rate;
    i["amplitude"] = cfg.initial.amplitude;
    if (!cfg.initial.path.empty()) i["path"] = cfg.initial.path;
    j["initial"] = i;
  }
  {
    json arr = json::array();
    for (const ShockEvent& s : cfg.shocks) {
      arr.push_back({{"t", s.time}, {"x", s.x}, {"amplitude", s.amplitude}});
    }
    j["shocks"] = arr;
  }
  {
    json s;
    s["t_end"] = cfg.schedule.t_end;
    if (!cfg.schedule.snapshot_times.empty()) {
      s["snapshot_times"] = cfg.schedule.snapshot_times;
    } else {
      s["snapshots"] = cfg.schedule.snapshots;
    }
    j["schedule"] = s;
  }
  j["cfl"] = cfg.cfl;
  j["seed"] = cfg.seed;
  j["bifurcate"] = {{"rho_min", cfg.bifurcate.rho_min},
                    {"rho_max", cfg.bifurcate.rho_max},
                    {"rho_count", cfg.bifurcate.rho_count},
                    {"beta_min", cfg.bifurcate.beta_min},
                    {"beta_max", cfg.bifurcate.beta_max},
                    {"beta_count", cfg.bifurcate.beta_count}};
  j["wave"] = {{"level", cfg.wave.level},
               {"stationary_tol", cfg.wave.stationary_tol},
               {"boundary_margin", cfg.wave.boundary_margin}};
  j["speed_vs_decay"] = {{"decay_rates", cfg.decay.decay_rates},
                         {"amplitude", cfg.decay.amplitude}};
  j["extinction"] = {{"fit_t0", cfg.extinction.fit_t0},
                     {"fit_t1", cfg.extinction.fit_t1},
                     {"u0_level", cfg.extinction.u0_level}};
  j["eigen"] = {{"linearize_at_zero_tension", cfg.eigen.linearize_at_zero_tension}};
  j["gap_scan"] = {{"gap_start", cfg.gap_scan.gap_start},
                   {"width_lo", cfg.gap_scan.width_lo},
                   {"width_hi", cfg.gap_scan.width_hi}};
  j["pulsating"] = {{"excited_span", cfg.pulsating.excited_span},
                    {"snapshot_dt", cfg.pulsating.snapshot_dt}};
  return j.dump(2) + "\n";
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string text = serialize(cfg);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace riotwave
