#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riotwave/engine.hpp"
#include "riotwave/environment.hpp"
#include "riotwave/wave.hpp"

namespace riotwave {

enum class ExperimentKind {
  Simulate,
  SteadyStates,
  Bifurcate,
  WaveSpeed,
  SpeedVsDecay,
  Extinction,
  Eigen,
  GapScan,
  Pulsating,
};

const char* to_string(ExperimentKind k);

enum class EnvKind { Uniform, Periodic, Gap };

struct GridSpec {
  std::size_t n = 401;
  double dx = 0.05;
  double x0 = 0.0;
  Boundary boundary = Boundary::NoFlux;

  Grid1D grid() const { return {n, dx, x0, boundary}; }
};

enum class InitialSpecKind { Zero, Step, ExpDecay, FromFile };

struct InitialSpec {
  InitialSpecKind kind = InitialSpecKind::Zero;
  double step_height = -1.0;   // < 0: use the excited level u*
  double step_fraction = 0.4;
  double decay_rate = 1.0;
  double amplitude = 5.0;
  std::string path;  // FromFile: two whitespace columns u v, one row per node
};

struct ScheduleSpec {
  double t_end = 10.0;
  std::vector<double> snapshot_times;  // explicit times, or
  int snapshots = 0;                   // count of uniform times incl. 0 and t_end
};

struct BifurcateOpts {
  double rho_min = 0.2, rho_max = 12.0;
  double beta_min = 0.5, beta_max = 40.0;
  std::size_t rho_count = 60, beta_count = 60;
};

struct WaveOpts {
  double level = -1.0;  // < 0: u*/2
  double stationary_tol = 5e-3;
  double boundary_margin = 10.0;
};

struct DecayOpts {
  std::vector<double> decay_rates{1.0, 3.0};
  double amplitude = 5.0;
};

struct ExtinctionOpts {
  double fit_t0 = 1.0;
  double fit_t1 = 10.0;
  double u0_level = 0.5;
};

struct EigenOpts {
  bool linearize_at_zero_tension = false;
};

struct GapScanOpts {
  double gap_start = 6.0;
  double width_lo = 0.5;
  double width_hi = 5.0;
};

struct PulsatingOpts {
  double excited_span = 2.0;
  double snapshot_dt = 0.1;
};

/// One experiment, fully specified. parse_config applies the documented
/// defaults (dx = 0.05, cfl factor 0.4, crossing level u*/2, stationary
/// tolerance 5e-3) and rejects unknown keys.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Simulate;
  Params params;
  GridSpec grid;
  EnvKind env_kind = EnvKind::Uniform;
  PeriodicEnv periodic;
  GapEnv gap;
  KernelSpec kernel;
  std::string kernel_matrix_file;
  InitialSpec initial;
  std::vector<ShockEvent> shocks;
  ScheduleSpec schedule;
  double cfl = 0.4;
  long seed = 1;

  BifurcateOpts bifurcate;
  WaveOpts wave;
  DecayOpts decay;
  ExtinctionOpts extinction;
  EigenOpts eigen;
  GapScanOpts gap_scan;
  PulsatingOpts pulsating;
};

/// Parses and fully validates a config file. Throws config_error with the
/// offending key or invariant.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

/// Canonical serialization (every field present, keys sorted); reparses to
/// an equal config.
std::string serialize(const ExperimentConfig& cfg);

/// Cross-field validation; parse_config already calls this.
void validate(const ExperimentConfig& cfg);

/// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace riotwave
