#pragma once

#include <vector>

#include "riotwave/environment.hpp"
#include "riotwave/grid.hpp"
#include "riotwave/kernel.hpp"
#include "riotwave/model.hpp"

namespace riotwave {

/// A triggering event: a grid Dirac of the given amplitude added to the
/// tension field at the node nearest x when the clock reaches `time`.
struct ShockEvent {
  double time = 0.0;
  double x = 0.0;
  double amplitude = 0.0;
};

/// Which parts of the right-hand side are assembled. Only tests ever turn
/// terms off (pure-diffusion conservation and convergence checks).
struct RhsTerms {
  bool reactions = true;
  bool diffusion = true;
  bool nonlocal = true;
};

/// Everything that defines one simulation except the state itself.
struct SimProblem {
  Params params;
  Grid1D grid;
  std::vector<double> node_alpha;  // restriction level per node
  KernelSpec kernel;
  std::vector<ShockEvent> shocks;
  double cfl = 0.4;  // fraction of the explicit diffusion limit, in (0, 0.4]
  RhsTerms terms;
};

/// Largest admissible explicit step: cfl * dx^2 / max(1, D).
double stable_dt(const Grid1D& g, const Params& p, double cfl = 0.4);

/// Adds amplitude/(dx w_j) to the tension at the node nearest e.x, which
/// keeps the trapezoid integral of the deposit exactly `amplitude` (w_j is
/// the node's quadrature weight; interior nodes get the plain A/dx).
void apply_shock(Fields& f, const ShockEvent& e, const Grid1D& g);

/// One explicit midpoint (RK2) step of the semi-discrete system. Negative
/// entries above -1e-12 are floored to zero afterwards (count accumulated in
/// *clipped when given); larger negatives are left for the positivity checks
/// to catch. Throws config_error when dt violates the stability bound and
/// numerical_error when the result stops being finite.
Fields step(const Fields& f, const SimProblem& prob, double dt, long* clipped = nullptr);

struct FieldStats {
  double t = 0.0;
  double u_min = 0.0, u_max = 0.0;
  double v_min = 0.0, v_max = 0.0;
};

struct Trajectory {
  std::vector<Fields> snapshots;  // one per requested snapshot time, ordered
  std::vector<FieldStats> stats;
  double kernel_bound = 0.0;  // sup row integral of the kernel
  double dt = 0.0;            // base step used
  long steps = 0;
  long clip_count = 0;
};

/// Integrates from `initial` to t_end, firing shocks at their times (a shock
/// at t is applied before the step leaving t; a snapshot requested at the
/// same instant sees the post-shock state). The step is shrunk to land on
/// every shock and snapshot time exactly, so reruns are bit-identical.
Trajectory run(const SimProblem& prob, const Fields& initial, double t_end,
               const std::vector<double>& snapshot_times);

}  // namespace riotwave
