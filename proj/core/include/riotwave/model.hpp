#pragma once

#include <cmath>

#include "riotwave/errors.hpp"

namespace riotwave {

/// Physical (dimensional) model constants. Units in comments; all rates and
/// scales must be strictly positive and omega > theta (activity relaxes
/// faster than tension, the ordering the rescaling assumes).
struct DimensionalParams {
  double D1 = 1.0;        // activity diffusivity [length^2/time]
  double D2 = 1.0;        // tension diffusivity  [length^2/time]
  double kappa = 0.0;     // non-local coupling strength [1/time]
  double omega = 1.0;     // activity decay rate [1/time]
  double theta = 0.5;     // baseline tension decay [1/time]
  double eta = 0.25;      // tension growth offset [1/time]
  double gamma = 1.0;     // transition amplitude [1/time]
  double beta_dim = 1.0;  // transition sharpness [1/tension]
  double a_dim = 1.0;     // critical tension threshold [tension]
  double m_dim = 1.0;     // inverse-activity scale [1/activity]
  double p = 1.0;         // decay exponent [-]
  double z0 = 1.0;        // activity carrying capacity [activity]
  double v_b = 1.0;       // base tension source [tension/time]
  double A0 = 0.0;        // shock amplitude [tension]
  double alpha_dim = 0.0; // restriction-of-information level [activity], in [0, z0]
};

/// Non-dimensional parameter set of the rescaled system. Field names double
/// as the config-file keys.
struct Params {
  double rho = 4.0;      // self-reinforcement strength
  double beta = 5.0;     // transition sharpness
  double a_bar = 2.0;    // critical tension
  double k = 0.0;        // non-local coupling
  double k2 = 0.25;      // tension growth offset, in (0,1)
  double D = 1.0;        // tension/activity diffusivity ratio
  double m_bar = 1.0;    // decay scale
  double p = 1.0;        // decay exponent
  double alpha = 0.0;    // restriction of information, in [0,1]
  double A_tilde = 1.0;  // shock amplitude
};

/// Throws config_error naming the offending field if p violates its
/// invariants (positivity, 0 < k2 < 1, 0 <= alpha <= 1, ...).
void validate(const Params& p);
void validate(const DimensionalParams& dp);

/// Maps dimensional constants onto the non-dimensional set: time rescaled by
/// the activity decay, length by the activity diffusion scale, activity by
/// the carrying capacity and tension by v_b over omega.
Params nondimensionalize(const DimensionalParams& dp);

// Exponent clamp for the sigmoid; keeps exp() finite while preserving the
// saturation limits.
inline constexpr double kSigmoidExpClamp = 700.0;

/// Sigmoid transition rate: rho / (1 + exp(-beta (v - a_bar))).
/// Strictly increasing in v with range (0, rho); saturates cleanly for
/// arguments far beyond the transition.
inline double transition_rate(double v, const Params& p) {
  double e = -p.beta * (v - p.a_bar);
  if (e > kSigmoidExpClamp) e = kSigmoidExpClamp;
  if (e < -kSigmoidExpClamp) e = -kSigmoidExpClamp;
  return p.rho / (1.0 + std::exp(e));
}

/// d/dv of transition_rate, evaluated stably as beta r (1 - r/rho).
inline double transition_rate_deriv(double v, const Params& p) {
  const double r = transition_rate(v, p);
  return p.beta * r * (1.0 - r / p.rho);
}

/// Tension decay factor 1 / (1 + m_bar u)^p: equals 1 at u = 0, strictly
/// decreasing, vanishing as u grows. Domain u >= 0.
inline double decay_factor(double u, const Params& p) {
  if (u < 0.0) throw config_error("decay_factor: activity u must be >= 0");
  const double base = 1.0 + p.m_bar * u;
  if (p.p == 1.0) return 1.0 / base;
  if (p.p == 2.0) return 1.0 / (base * base);
  return std::pow(base, -p.p);
}

/// d/du of decay_factor: -m_bar p (1 + m_bar u)^{-(p+1)} <= 0.
inline double decay_factor_deriv(double u, const Params& p) {
  if (u < 0.0) throw config_error("decay_factor_deriv: activity u must be >= 0");
  const double base = 1.0 + p.m_bar * u;
  if (p.p == 1.0) return -p.m_bar / (base * base);
  return -p.m_bar * p.p * std::pow(base, -p.p - 1.0);
}

/// Ignition growth term: zero on [0, alpha], (u - alpha)(1 - u) beyond.
/// For alpha = 0 this is the logistic form u(1 - u). Negative for u > 1.
/// Domain u >= 0.
inline double ignition_growth(double u, double alpha) {
  if (u < 0.0) throw config_error("ignition_growth: activity u must be >= 0");
  if (u <= alpha) return 0.0;
  return (u - alpha) * (1.0 - u);
}

inline double ignition_growth(double u, const Params& p) {
  return ignition_growth(u, p.alpha);
}

/// One-sided derivative bookkeeping for the kink of the ignition term at
/// u = alpha (alpha > 0): `value` is the right-hand derivative there and
/// `one_sided` is set.
struct IgnitionSlope {
  double value = 0.0;
  bool one_sided = false;
};

inline IgnitionSlope ignition_growth_slope(double u, double alpha) {
  if (u < 0.0) throw config_error("ignition_growth_slope: activity u must be >= 0");
  if (alpha > 0.0 && u == alpha) return {1.0 - alpha, true};
  if (u < alpha) return {0.0, false};
  return {1.0 + alpha - 2.0 * u, false};
}

inline double ignition_growth_deriv(double u, double alpha) {
  return ignition_growth_slope(u, alpha).value;
}

/// Activity reaction: r(v) G_alpha(u) - u.
inline double activity_reaction(double u, double v, const Params& p) {
  return transition_rate(v, p) * ignition_growth(u, p.alpha) - u;
}

/// Tension reaction: -(h(u) - k2) v + 1.
inline double tension_reaction(double u, double v, const Params& p) {
  return -(decay_factor(u, p) - p.k2) * v + 1.0;
}

/// Jacobian of (activity_reaction, tension_reaction) wrt (u, v). The lower
/// off-diagonal -h'(u) v is nonnegative for u, v >= 0, which is the
/// cooperative structure behind the comparison principle. `one_sided` flags
/// evaluation at the ignition kink, where the right-hand derivative is used.
struct ReactionJacobian {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
  bool one_sided = false;
  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a21; }
};

inline ReactionJacobian reaction_jacobian(double u, double v, const Params& p) {
  const IgnitionSlope gs = ignition_growth_slope(u, p.alpha);
  ReactionJacobian j;
  j.a11 = transition_rate(v, p) * gs.value - 1.0;
  j.a12 = transition_rate_deriv(v, p) * ignition_growth(u, p.alpha);
  j.a21 = -decay_factor_deriv(u, p) * v;
  j.a22 = -(decay_factor(u, p) - p.k2);
  j.one_sided = gs.one_sided;
  return j;
}

}  // namespace riotwave
