#include "riotwave/environment.hpp"

#include <cmath>
#include <string>

namespace riotwave {

namespace {
constexpr double kEdgeTol = 1e-9;
}

EnvironmentProfile EnvironmentProfile::uniform(double alpha, double from, double to) {
  EnvironmentProfile env;
  env.pieces.push_back({from, to, alpha});
  return env;
}

double EnvironmentProfile::alpha_at(double x) const {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    const bool last = i + 1 == pieces.size();
    if (x >= p.from - kEdgeTol && (x < p.to - kEdgeTol || (last && x <= p.to + kEdgeTol))) {
      return p.alpha;
    }
  }
  throw config_error("environment: location " + std::to_string(x) +
                     " not covered by any alpha piece");
}

void EnvironmentProfile::check(const Grid1D& g) const {
  if (pieces.empty()) throw config_error("environment: no alpha pieces");
  double cursor = pieces.front().from;
  for (const Piece& p : pieces) {
    if (std::abs(p.from - cursor) > kEdgeTol) {
      throw config_error("environment: alpha pieces do not tile the grid");
    }
    if (!(p.to > p.from)) throw config_error("environment: empty alpha piece");
    if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) {
      throw config_error("environment: alpha must lie in [0,1]");
    }
    cursor = p.to;
  }
  if (pieces.front().from > g.x0 + kEdgeTol || cursor < g.x_end() - kEdgeTol) {
    throw config_error("environment: alpha pieces do not cover the grid extent");
  }
}

std::vector<double> EnvironmentProfile::node_alphas(const Grid1D& g) const {
  check(g);
  std::vector<double> out(g.n);
  for (std::size_t i = 0; i < g.n; ++i) out[i] = alpha_at(g.x(i));
  return out;
}

void PeriodicEnv::check() const {
  if (!(period > 0.0)) throw config_error("periodic env: period must be > 0");
  if (repetitions < 1) throw config_error("periodic env: repetitions must be >= 1");
  if (patches.empty()) throw config_error("periodic env: no patches");
  double cursor = 0.0;
  for (const Patch& p : patches) {
    if (std::abs(p.from - cursor) > kEdgeTol || !(p.to > p.from)) {
      throw config_error("periodic env: patches must partition [0, period)");
    }
    if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) {
      throw config_error("periodic env: alpha must lie in [0,1]");
    }
    cursor = p.to;
  }
  if (std::abs(cursor - period) > kEdgeTol) {
    throw config_error("periodic env: patches must partition [0, period)");
  }
}

EnvironmentProfile PeriodicEnv::tile(double x0) const {
  check();
  EnvironmentProfile env;
  for (int r = 0; r < repetitions; ++r) {
    const double off = x0 + r * period;
    for (const Patch& p : patches) {
      env.pieces.push_back({off + p.from, off + p.to, p.alpha});
    }
  }
  return env;
}

EnvironmentProfile PeriodicEnv::one_period(double x0) const {
  PeriodicEnv single = *this;
  single.repetitions = 1;
  return single.tile(x0);
}

void GapEnv::check(double x0, double x_end) const {
  if (!(x0 < s1_end && s1_end < s2_end && s2_end < x_end)) {
    throw config_error("gap env: need x0 < s1_end < s2_end < domain end");
  }
  if (!(alpha1 >= 0.0 && alpha1 < 1.0) || !(alpha2 >= 0.0 && alpha2 < 1.0)) {
    throw config_error("gap env: alpha1 and alpha2 must lie in [0,1)");
  }
}

EnvironmentProfile GapEnv::profile(double x0, double x_end) const {
  check(x0, x_end);
  EnvironmentProfile env;
  env.pieces.push_back({x0, s1_end, alpha1});
  env.pieces.push_back({s1_end, s2_end, 1.0});
  env.pieces.push_back({s2_end, x_end, alpha2});
  return env;
}

}  // namespace riotwave
