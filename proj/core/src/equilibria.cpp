#include "riotwave/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "riotwave/errors.hpp"
#include "riotwave/parallel.hpp"

namespace riotwave {

namespace {

constexpr double kResidualTol = 1e-9;   // |H| threshold for degenerate double roots
constexpr double kDetTieTol = 1e-9;     // |det| below this is Degenerate
constexpr int kScanCells = 4096;

double adaptive_simpson(const std::function<double(double)>& f, double a, double fa,
                        double b, double fb, double m, double fm, double whole,
                        double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (b <= a) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

// Bisection run to floating-point collapse so the residual |H| at the root is
// limited only by the local slope times one ulp.
double bisect_root(const std::function<double(double)>& f, double a, double fa,
                   double b, double fb) {
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) != (fm < 0.0)) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  return std::abs(fa) <= std::abs(fb) ? a : b;
}

// Golden-section minimizer of |f| on [a, b], used to polish degenerate
// (tangency) roots where no sign change exists.
double minimize_abs(const std::function<double(double)>& f, double a, double b) {
  const double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = std::abs(f(x1));
  double f2 = std::abs(f(x2));
  for (int it = 0; it < 160 && b - a > 1e-15; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = std::abs(f(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = std::abs(f(x2));
    }
  }
  return f1 <= f2 ? x1 : x2;
}

}  // namespace

double pole_activity(const Params& p) {
  validate(p);
  return (std::pow(1.0 / p.k2, 1.0 / p.p) - 1.0) / p.m_bar;
}

double equilibrium_tension(double u, const Params& p) {
  if (u < 0.0) throw config_error("equilibrium_tension: activity u must be >= 0");
  const double denom = decay_factor(u, p) - p.k2;
  if (denom <= 0.0) {
    throw config_error("equilibrium_tension: u beyond the tension pole (h(u) <= k2)");
  }
  return 1.0 / denom;
}

double nullcline_reaction(double u, const Params& p) {
  return transition_rate(equilibrium_tension(u, p), p) * ignition_growth(u, p.alpha) - u;
}

double default_critical_tension(const Params& p) {
  if (pole_activity(p) <= 1.0) {
    throw config_error(
        "default_critical_tension: pole activity <= 1, v*(1) undefined");
  }
  return 0.5 * (equilibrium_tension(0.0, p) + equilibrium_tension(1.0, p));
}

double wave_potential(double u_hi, const Params& p) {
  if (u_hi < 0.0) throw config_error("wave_potential: u must be >= 0");
  if (u_hi >= pole_activity(p)) {
    throw config_error("wave_potential: integration range crosses the tension pole");
  }
  if (u_hi <= p.alpha) return 0.0;  // integrand vanishes on [0, alpha]
  const auto growth = [&p](double s) {
    return transition_rate(equilibrium_tension(s, p), p) * ignition_growth(s, p.alpha);
  };
  return integrate(growth, p.alpha, u_hi, 1e-11);
}

double net_wave_potential(double u_hi, const Params& p) {
  return wave_potential(u_hi, p) - 0.5 * u_hi * u_hi;
}

double critical_sharpness(double rho, const Params& p) {
  if (rho <= 1.0) {
    throw config_error("critical_sharpness: rho must exceed 1 (no boundary below)");
  }
  const double v0 = equilibrium_tension(0.0, p);
  if (p.a_bar <= v0) {
    throw config_error("critical_sharpness: a_bar must exceed v*(0)");
  }
  return std::log(rho - 1.0) / (p.a_bar - v0);
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::Degenerate: return "degenerate";
  }
  return "?";
}

const char* to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::IIa: return "IIa";
    case Region::IIb: return "IIb";
    case Region::IIIa: return "IIIa";
    case Region::IIIb: return "IIIb";
    case Region::OnBeta1: return "OnBeta1";
  }
  return "?";
}

namespace {

SteadyState make_state(double u, const Params& p) {
  SteadyState s;
  s.u = u;
  s.v = equilibrium_tension(u, p);
  const ReactionJacobian j = reaction_jacobian(u, s.v, p);
  s.trace = j.trace();
  s.det = j.det();
  if (std::abs(s.det) < kDetTieTol) {
    s.stability = Stability::Degenerate;
  } else if (s.det < 0.0 || s.trace > 0.0) {
    s.stability = Stability::Unstable;
  } else {
    s.stability = Stability::Stable;
  }
  return s;
}

}  // namespace

std::vector<SteadyState> find_steady_states(const Params& p) {
  validate(p);
  if (p.k != 0.0) {
    throw config_error("find_steady_states: requires local dispersal (k = 0)");
  }
  const double hi = std::min(1.0, pole_activity(p)) - 1e-9;
  const auto H = [&p](double u) { return nullcline_reaction(u, p); };

  std::vector<double> roots{0.0};  // H(0) = 0 identically
  std::vector<double> tangencies;
  const double du = hi / kScanCells;
  double prev_u = 0.0;
  double prev_h = 0.0;
  for (int i = 1; i <= kScanCells; ++i) {
    const double u = i * du;
    const double h = H(u);
    if (h == 0.0) {
      roots.push_back(u);
    } else if (i > 1 && prev_h != 0.0 && (h < 0.0) != (prev_h < 0.0)) {
      roots.push_back(bisect_root(H, prev_u, prev_h, u, h));
    } else if (i > 2 && prev_h != 0.0 && std::abs(prev_h) < kResidualTol) {
      // Tangency candidate: |H| dips below tolerance without a sign change
      // (degenerate double root, e.g. the two-state boundary of the
      // alpha > 0 diagram). Polish by minimizing |H| around the dip.
      const double before = H(prev_u - du);
      if (std::abs(prev_h) < std::abs(before) && std::abs(prev_h) < std::abs(h) &&
          (before < 0.0) == (h < 0.0)) {
        const double m = minimize_abs(H, prev_u - du, u);
        if (std::abs(H(m)) < kResidualTol) tangencies.push_back(m);
      }
    }
    prev_u = u;
    prev_h = h;
  }

  // Sign-change roots take precedence over tangency candidates nearby.
  for (double t : tangencies) {
    bool near_root = false;
    for (double r : roots) {
      if (std::abs(t - r) <= 2.0 * du) near_root = true;
    }
    if (!near_root) roots.push_back(t);
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> unique_roots;
  for (double r : roots) {
    if (unique_roots.empty() || r - unique_roots.back() > 0.5 * du) {
      unique_roots.push_back(r);
    }
  }

  std::vector<SteadyState> states;
  states.reserve(unique_roots.size());
  for (double r : unique_roots) states.push_back(make_state(r, p));
  return states;
}

RegionLabel classify_region(const Params& p) {
  const std::vector<SteadyState> states = find_steady_states(p);
  RegionLabel label;
  label.diagram = p.alpha == 0.0 ? Diagram::AlphaZero : Diagram::AlphaMid;
  label.n_states = static_cast<int>(states.size());

  if (states.size() == 1) {
    label.region = Region::I;
    return label;
  }
  if (label.diagram == Diagram::AlphaZero) {
    if (states.size() == 2) {
      label.region =
          states[1].stability == Stability::Stable ? Region::IIb : Region::IIa;
    } else {
      const double f = net_wave_potential(states.back().u, p);
      label.region = f <= 0.0 ? Region::IIIa : Region::IIIb;
    }
  } else {
    if (states.size() == 2) {
      label.region = Region::OnBeta1;
    } else {
      const double f = net_wave_potential(states.back().u, p);
      label.region = f <= 0.0 ? Region::IIa : Region::IIb;
    }
  }
  return label;
}

std::vector<std::pair<double, double>> BifurcationMap::count_monotonicity_violations()
    const {
  std::vector<std::pair<double, double>> out;
  for (std::size_t ib = 0; ib < beta_axis.size(); ++ib) {
    for (std::size_t ir = 1; ir < rho_axis.size(); ++ir) {
      const auto& prev = at(ir - 1, ib);
      const auto& cur = at(ir, ib);
      if (prev.ok && cur.ok && cur.label.n_states < prev.label.n_states) {
        out.emplace_back(rho_axis[ir], beta_axis[ib]);
      }
    }
  }
  return out;
}

BifurcationMap sweep_bifurcation(const std::vector<double>& rho_grid,
                                 const std::vector<double>& beta_grid,
                                 const Params& base) {
  if (rho_grid.empty() || beta_grid.empty()) {
    throw config_error("sweep_bifurcation: grids must be nonempty");
  }
  if (!std::is_sorted(rho_grid.begin(), rho_grid.end()) ||
      std::adjacent_find(rho_grid.begin(), rho_grid.end()) != rho_grid.end() ||
      !std::is_sorted(beta_grid.begin(), beta_grid.end()) ||
      std::adjacent_find(beta_grid.begin(), beta_grid.end()) != beta_grid.end()) {
    throw config_error("sweep_bifurcation: grids must be strictly increasing");
  }

  BifurcationMap map;
  map.rho_axis = rho_grid;
  map.beta_axis = beta_grid;
  map.cells.resize(rho_grid.size() * beta_grid.size());

  parallel_for(map.cells.size(), [&](std::size_t idx) {
    const std::size_t ir = idx / beta_grid.size();
    const std::size_t ib = idx % beta_grid.size();
    Params p = base;
    p.rho = rho_grid[ir];
    p.beta = beta_grid[ib];
    BifurcationCell& cell = map.cells[idx];
    try {
      cell.label = classify_region(p);
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.ok = false;
      cell.error = e.what();
    }
  });
  return map;
}

}  // namespace riotwave
