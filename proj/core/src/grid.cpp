#include "riotwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace riotwave {

void validate(const Grid1D& g) {
  if (g.n < 8) throw config_error("grid: need at least 8 nodes");
  if (!(g.dx > 0.0) || !std::isfinite(g.dx)) {
    throw config_error("grid: dx must be positive and finite");
  }
  if (!std::isfinite(g.x0)) throw config_error("grid: x0 must be finite");
}

std::size_t Grid1D::nearest(double x_query) const {
  const double fi = (x_query - x0) / dx;
  const long i = std::lround(fi);
  if (i < 0 || static_cast<std::size_t>(i) >= n) {
    throw config_error("grid: location " + std::to_string(x_query) +
                       " lies outside the grid");
  }
  return static_cast<std::size_t>(i);
}

double integrate(const std::vector<double>& f, const Grid1D& g) {
  if (f.size() != g.n) throw config_error("integrate: field length != grid size");
  double acc = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) acc += g.weight(i) * f[i];
  return acc * g.dx;
}

std::vector<double> laplacian(const std::vector<double>& f, const Grid1D& g) {
  if (f.size() != g.n) throw config_error("laplacian: field length != grid size");
  const std::size_t n = g.n;
  const double inv_dx2 = 1.0 / (g.dx * g.dx);
  std::vector<double> out(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = (f[i - 1] - 2.0 * f[i] + f[i + 1]) * inv_dx2;
  }
  if (g.boundary == Boundary::Periodic) {
    out[0] = (f[n - 1] - 2.0 * f[0] + f[1]) * inv_dx2;
    out[n - 1] = (f[n - 2] - 2.0 * f[n - 1] + f[0]) * inv_dx2;
  } else {
    out[0] = 2.0 * (f[1] - f[0]) * inv_dx2;
    out[n - 1] = 2.0 * (f[n - 2] - f[n - 1]) * inv_dx2;
  }
  return out;
}

}  // namespace riotwave
