#include "riotwave/model.hpp"

#include <cmath>
#include <string>

namespace riotwave {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw config_error(message);
}

void require_finite_positive(double x, const char* field) {
  require(std::isfinite(x) && x > 0.0, std::string("invalid parameter: ") + field +
                                           " must be finite and > 0");
}

}  // namespace

void validate(const Params& p) {
  require_finite_positive(p.rho, "rho");
  require_finite_positive(p.beta, "beta");
  require(std::isfinite(p.a_bar), "invalid parameter: a_bar must be finite");
  require(std::isfinite(p.k) && p.k >= 0.0, "invalid parameter: k must be >= 0");
  require(std::isfinite(p.k2) && p.k2 > 0.0 && p.k2 < 1.0,
          "invalid parameter: k2 must lie in (0,1)");
  require(std::isfinite(p.D) && p.D >= 0.0, "invalid parameter: D must be >= 0");
  require_finite_positive(p.m_bar, "m_bar");
  require_finite_positive(p.p, "p");
  require(std::isfinite(p.alpha) && p.alpha >= 0.0 && p.alpha <= 1.0,
          "invalid parameter: alpha must lie in [0,1]");
  require(std::isfinite(p.A_tilde) && p.A_tilde >= 0.0,
          "invalid parameter: A_tilde must be >= 0");
}

void validate(const DimensionalParams& dp) {
  require_finite_positive(dp.D1, "D1");
  require(std::isfinite(dp.D2) && dp.D2 >= 0.0, "invalid parameter: D2 must be >= 0");
  require(std::isfinite(dp.kappa) && dp.kappa >= 0.0,
          "invalid parameter: kappa must be >= 0");
  require_finite_positive(dp.omega, "omega");
  require_finite_positive(dp.theta, "theta");
  require_finite_positive(dp.eta, "eta");
  require_finite_positive(dp.gamma, "gamma");
  require_finite_positive(dp.beta_dim, "beta_dim");
  require_finite_positive(dp.a_dim, "a_dim");
  require_finite_positive(dp.m_dim, "m_dim");
  require_finite_positive(dp.p, "p");
  require_finite_positive(dp.z0, "z0");
  require_finite_positive(dp.v_b, "v_b");
  require(std::isfinite(dp.A0) && dp.A0 >= 0.0, "invalid parameter: A0 must be >= 0");
  require(dp.omega > dp.theta,
          "invalid parameter: omega must exceed theta (timescale ordering)");
  require(std::isfinite(dp.alpha_dim) && dp.alpha_dim >= 0.0 && dp.alpha_dim <= dp.z0,
          "invalid parameter: alpha_dim must lie in [0, z0]");
}

Params nondimensionalize(const DimensionalParams& dp) {
  validate(dp);
  Params p;
  p.rho = dp.gamma / dp.omega;
  p.k = dp.kappa * dp.v_b / dp.omega;
  p.k2 = dp.eta / dp.omega;
  p.A_tilde = dp.A0 / dp.v_b;
  p.a_bar = dp.a_dim * dp.omega / dp.v_b;
  p.beta = dp.beta_dim * dp.v_b / dp.omega;
  p.D = dp.D2 / dp.D1;
  p.m_bar = dp.m_dim * dp.z0;
  p.p = dp.p;
  p.alpha = dp.alpha_dim / dp.z0;
  validate(p);
  return p;
}

}  // namespace riotwave
