#pragma once

#include <vector>

#include "riotwave/engine.hpp"
#include "riotwave/environment.hpp"
#include "riotwave/wave.hpp"

namespace riotwave {

/// Principal eigenpair of the linearized cooperative operator on one period:
///   -phi'' - Phi_u(x,0,v0) phi - Phi_v(x,0,v0) psi = lambda phi
///   -D psi'' - Psi_u(0,v0) phi - Psi_v(0,v0) psi   = lambda psi
/// with periodic conditions, normalized so max(||phi||_inf, ||psi||_inf) = 1.
/// lambda < 0 means the non-excited state is unstable (activity persists).
struct EigenResult {
  double lambda = 0.0;
  std::vector<double> phi;  // activity component, positive
  std::vector<double> psi;  // tension component, positive
  int iterations = 0;
  double residual = 0.0;  // ||L x - lambda x||_inf under the joint normalization
  double phi_sup = 0.0;
  double psi_sup = 0.0;
};

/// Computes the eigenvalue of minimal real part by inverse (shift-invert)
/// power iteration: (A - sigma0 I) with sigma0 below the spectrum is
/// inverse-positive, so the iteration converges to the positive Perron pair
/// in a few dozen steps. The linearization tension is v*(0) (the non-excited
/// state); `linearize_at_zero_tension` switches to the literal (0,0) point
/// for comparison. Grid must be periodic and span exactly one period.
EigenResult principal_eigenvalue(const Params& p, const std::vector<double>& node_alpha,
                                 const Grid1D& g, bool linearize_at_zero_tension = false);

/// Convenience: eigenvalue for env on an n-node one-period grid.
EigenResult principal_eigenvalue(const Params& p, const PeriodicEnv& env, std::size_t n,
                                 bool linearize_at_zero_tension = false);

/// Second-order Richardson extrapolation of lambda over grids n and 2n.
double eigenvalue_extrapolated(const Params& p, const PeriodicEnv& env, std::size_t n);

enum class PersistVerdict { Persist, Vanish, Marginal };

const char* to_string(PersistVerdict v);

struct InstabilityCheck {
  double lambda = 0.0;
  PersistVerdict predicted = PersistVerdict::Marginal;
};

/// Persist iff lambda < -1e-8, Vanish iff lambda > 1e-8, Marginal between.
InstabilityCheck instability_check(const Params& p, const PeriodicEnv& env,
                                   std::size_t n);

struct PersistenceSpec {
  Params params;
  PeriodicEnv env;
  int repetitions = 4;          // periods simulated (periodic boundary)
  std::size_t n_per_period = 56;
  double seed_level = 1e-3;     // small positive initial activity
  double t_max = 600.0;
  double chunk = 25.0;          // convergence checked after each chunk
  double converge_tol = 1e-8;   // sup change per chunk
  double vanish_tol = 1e-9;     // sup u below this counts as extinct
  double cfl = 0.4;
};

struct PersistenceOutcome {
  bool persisted = false;
  bool converged = false;
  double t_reached = 0.0;
  double final_sup_u = 0.0;
  double periodicity_error = 0.0;  // sup profile difference between periods
  Fields final_state;
};

/// Long-run solver check of the eigenvalue prediction: evolves small positive
/// data over several periods until the state either settles on a positive
/// periodic profile or dies out.
PersistenceOutcome persistence_experiment(const PersistenceSpec& spec);

struct PulsatingSpec {
  Params params;
  PeriodicEnv env;       // repetitions taken from here
  double dx = 0.05;
  double t_end = 30.0;
  double snapshot_dt = 0.1;
  double excited_span = 2.0;     // initial excited stretch [x0, x0 + span]
  double level = -1.0;           // tracking level; < 0: half the excited level.
                                 // Must sit below the wake's periodic minimum.
  double stationary_tol = 5e-3;
  double boundary_margin = 4.0;
  double cfl = 0.4;
};

enum class PulsatingVerdictKind { Pulsating, Blocked };

const char* to_string(PulsatingVerdictKind v);

struct PulsatingReport {
  PulsatingVerdictKind verdict = PulsatingVerdictKind::Blocked;
  double mean_speed = 0.0;
  double r2 = 0.0;
  double oscillation_period = 0.0;  // dominant period of the detrended front
  double expected_period = 0.0;     // L / mean_speed
  double period_mismatch = 0.0;     // |osc - expected| / expected
  FrontTrace trace;
  double u_star = 0.0;
};

/// Front propagation through a tiled periodic environment. Pulsating verdict
/// requires a mean speed above tolerance and a detrended front position
/// whose dominant period matches L / mean-speed within 10%; a front whose
/// position converges is Blocked.
PulsatingReport pulsating_front_experiment(const PulsatingSpec& spec);

/// Dominant period of a uniformly sampled, detrended series: autocorrelation
/// peak searched around `expected`, refined parabolically. NaN when the
/// series is too short to resolve it.
double dominant_period(const std::vector<double>& detrended, double dt,
                       double expected);

struct GapSpec {
  Params params;
  GapEnv env;
  double x0 = 0.0;
  double x_end = 15.0;
  double dx = 0.05;
  double t_end = 60.0;
  double snapshot_dt = 0.5;
  double excited_fraction = 0.7;  // of S1, initially excited
  double cfl = 0.4;
};

struct GapOutcome {
  bool crossed = false;
  double arrival_time = 0.0;  // first snapshot with activity beyond the gap
  double final_s3_max = 0.0;
  double threshold = 0.0;     // u*/2 of the invaded region
};

/// Crossed iff the activity in the far region exceeds half its excited level
/// before t_end.
GapOutcome gap_experiment(const GapSpec& spec);

struct GapScanRow {
  double width = 0.0;
  bool crossed = false;
  double arrival_time = 0.0;
};

struct CriticalGap {
  double width = 0.0;  // midpoint of the final bracket (tolerance dx)
  std::vector<GapScanRow> probes;  // every width simulated, sorted
  GapOutcome verify_below;  // outcome at width - 2 dx (expected: crossed)
  GapOutcome verify_above;  // outcome at width + 2 dx (expected: blocked)
};

/// Bisects the gap width between a crossing low end and a blocking high end.
/// Every probe is recorded; a non-monotone verdict sequence raises
/// numerical_error instead of being silently bisected through.
CriticalGap find_critical_gap(const GapSpec& base, double gap_start, double width_lo,
                              double width_hi);

}  // namespace riotwave
