#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "riotwave/engine.hpp"
#include "riotwave/equilibria.hpp"

namespace riotwave {

/// Front location samples x_f(t) at a fixed crossing level.
struct FrontTrace {
  std::vector<double> times;      // strictly increasing
  std::vector<double> positions;  // same length
};

enum class FrontClass { Advancing, Stationary, Retreating };

const char* to_string(FrontClass c);

struct WaveSpeedEstimate {
  double c = 0.0;              // fitted front speed (positive: invades +x)
  double r2 = 0.0;             // goodness of the linear fit
  double c_stderr = 0.0;       // standard error of the fitted slope
  double transient_cut = 0.0;  // time excluded from the fit
  std::size_t samples_used = 0;
  FrontClass classification = FrontClass::Stationary;
};

/// Abscissa where the activity profile crosses `level`, by linear
/// interpolation between the bracketing nodes. The profile must cross
/// exactly once (monotone front); otherwise throws numerical_error
/// (front absent / non-monotone).
double front_position(const std::vector<double>& u, const Grid1D& g, double level);

/// Least-squares speed of a front trace. The transient cut is the later of
/// the first 30% of the trace and the first point from which the trailing
/// fit reaches r2 >= 0.9999; at least 10 samples must remain.
/// |c| below stationary_tol classifies as Stationary.
WaveSpeedEstimate estimate_speed(const FrontTrace& trace, double stationary_tol = 5e-3);

/// Straight-line fit y = intercept + slope x. r2 is defined as 1 for
/// degenerate (constant) data, which a stationary front produces.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
  double slope_stderr = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 std::size_t first = 0);

enum class InitialKind { Zero, Step, ExpDecay, Custom };

/// Initial activity data; the tension always starts on the nullcline,
/// v0 = v*(u0) pointwise.
struct InitialCondition {
  InitialKind kind = InitialKind::Step;
  double step_height = -1.0;    // < 0: use the excited level u*
  double step_fraction = 0.4;   // leftmost fraction of the domain excited
  double decay_rate = 1.0;      // ExpDecay: u0 = min(amplitude e^{-k x}, u*)
  double amplitude = 5.0;
  std::vector<double> custom_u;  // Custom
};

struct WaveExperimentSpec {
  Params params;
  double length = 80.0;
  double dx = 0.05;
  double x0 = 0.0;
  double t_end = 24.0;
  std::size_t snapshot_count = 81;  // uniform, including t = 0 and t_end
  InitialCondition ic;
  double level = -1.0;           // crossing level; < 0: u*/2
  double stationary_tol = 5e-3;
  double boundary_margin = 10.0;  // fronts must stay this far from the walls
  double cfl = 0.4;
};

struct WaveExperimentResult {
  WaveSpeedEstimate estimate;
  FrontTrace trace;
  double u_star = 0.0;           // excited activity level
  double level = 0.0;            // crossing level used
  double potential_growth = 0.0; // wave_potential(u*)
  double potential_net = 0.0;    // net_wave_potential(u*), the sign predictor
  double profile_change = 0.0;   // aligned sup-diff of the last two profiles
  bool translation_invariant = false;  // profile_change < 1e-3
  Fields prev_snapshot;
  Fields last_snapshot;
  double u0_sup = 0.0;
  double u_sup_overall = 0.0;
  long clip_count = 0;
};

/// Runs the solver from the given data, tracks the front and fits its speed.
/// Fronts entering the boundary margin during the measurement window raise a
/// config_error suggesting a larger extent.
WaveExperimentResult run_wave_experiment(const WaveExperimentSpec& spec);

/// Speeds for a list of initial exponential decay rates (monostable setting:
/// shallower data travel faster until the steep-data speed floor).
std::vector<std::pair<double, WaveSpeedEstimate>> speed_vs_initial_decay(
    const WaveExperimentSpec& base, const std::vector<double>& decay_rates);

struct ExtinctionSpec {
  Params params;  // expected: alpha = 1 or region-I parameters
  std::size_t n = 400;
  double length = 20.0;
  double x0 = 0.0;
  double t_end = 40.0;
  double u0_level = 0.5;  // constant initial activity
  std::vector<ShockEvent> shocks;
  double fit_t0 = 1.0;
  double fit_t1 = 10.0;
  double snapshot_dt = 0.5;
  double cfl = 0.4;
};

struct ExtinctionReport {
  double tau_hat = 0.0;     // fitted decay rate of ||u||_inf
  double fit_r2 = 0.0;
  double final_u_sup = 0.0;
  double final_v_err = 0.0;  // ||v(T) - v*(0)||_inf
  bool decayed = true;       // sup norm of u nonincreasing across snapshots
  std::vector<std::pair<double, double>> sup_trace;  // (t, ||u||_inf)
};

ExtinctionReport extinction_experiment(const ExtinctionSpec& spec);

}  // namespace riotwave
