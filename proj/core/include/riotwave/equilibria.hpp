#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riotwave/model.hpp"

namespace riotwave {

/// Tension value solving the tension nullcline at activity u:
/// v*(u) = 1 / (h(u) - k2). Strictly increasing, diverging at the pole.
/// Domain 0 <= u < pole_activity(p).
double equilibrium_tension(double u, const Params& p);

/// Activity at which the tension nullcline blows up:
/// (1/m_bar) [(1/k2)^{1/p} - 1]. Positive because k2 < 1.
double pole_activity(const Params& p);

/// Activity reaction restricted to the tension nullcline:
/// H(u) = r(v*(u)) G_alpha(u) - u. Constant steady states of the local
/// system are exactly the roots of H on [0, min(1, pole)).
double nullcline_reaction(double u, const Params& p);

/// Default critical tension: midpoint of v*(0) and v*(1). Requires the pole
/// to lie beyond u = 1 so v*(1) is finite.
double default_critical_tension(const Params& p);

/// Integral of the growth part along the nullcline,
/// F(u_hi) = int_0^{u_hi} r(v*(s)) G_alpha(s) ds, by adaptive quadrature
/// (absolute error <= 1e-10). Nonnegative and nondecreasing on [alpha, 1].
double wave_potential(double u_hi, const Params& p);

/// Potential of the full nullcline reaction, int_0^{u_hi} H(s) ds
/// = wave_potential(u_hi) - u_hi^2/2. Its sign at the excited state governs
/// the front direction (positive: excited state invades) and the global
/// stability splits of the region diagrams.
double net_wave_potential(double u_hi, const Params& p);

/// The closed-form sharpness boundary where the origin's nullcline growth
/// rate H'(0) vanishes for alpha = 0: beta = ln(rho - 1) / (a_bar - v*(0)).
/// Requires rho > 1 and a_bar > v*(0).
double critical_sharpness(double rho, const Params& p);

enum class Stability { Stable, Unstable, Degenerate };

const char* to_string(Stability s);

/// A constant equilibrium of the local (k = 0) system with its linearization.
struct SteadyState {
  double u = 0.0;
  double v = 0.0;
  double trace = 0.0;
  double det = 0.0;
  Stability stability = Stability::Stable;
};

/// All constant steady states of the local system, sorted by activity level;
/// the non-excited state (0, v*(0)) is always first. Stability comes from
/// the reaction Jacobian: Stable iff trace < 0 and det > 0, Degenerate when
/// |det| < 1e-9, Unstable otherwise. Requires p.k == 0.
std::vector<SteadyState> find_steady_states(const Params& p);

enum class Diagram { AlphaZero, AlphaMid };

enum class Region { I, IIa, IIb, IIIa, IIIb, OnBeta1 };

const char* to_string(Region r);

struct RegionLabel {
  Diagram diagram = Diagram::AlphaZero;
  Region region = Region::I;
  int n_states = 1;
};

/// Classifies (rho, beta) by steady-state count and character:
///  alpha = 0: one state -> I; two states -> IIb when the non-zero state is
///  stable (monostable), IIa otherwise; three states -> IIIa/IIIb by the
///  sign of the net potential at the top state (negative: non-excited state
///  globally preferred).
///  alpha > 0: one state -> I; three states -> IIa/IIb by the same sign;
///  two states -> the degenerate boundary case OnBeta1.
RegionLabel classify_region(const Params& p);

struct BifurcationCell {
  RegionLabel label;
  bool ok = true;
  std::string error;  // set when classification failed at this cell
};

struct BifurcationMap {
  std::vector<double> rho_axis;   // strictly increasing
  std::vector<double> beta_axis;  // strictly increasing
  std::vector<BifurcationCell> cells;  // row-major: [ir * beta_axis.size() + ib]

  const BifurcationCell& at(std::size_t ir, std::size_t ib) const {
    return cells[ir * beta_axis.size() + ib];
  }
  /// (rho, beta) cells where the state count drops as rho grows at fixed
  /// beta. Happens along the boundaries where the warm root merges with the
  /// origin; recorded rather than treated as an error.
  std::vector<std::pair<double, double>> count_monotonicity_violations() const;
};

/// classify_region at every grid point; cells are independent and evaluated
/// concurrently, per-cell failures recorded, not fatal.
BifurcationMap sweep_bifurcation(const std::vector<double>& rho_grid,
                                 const std::vector<double>& beta_grid,
                                 const Params& base);

}  // namespace riotwave
