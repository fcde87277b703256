#pragma once

#include <cstddef>
#include <vector>

#include "riotwave/errors.hpp"

namespace riotwave {

enum class Boundary { NoFlux, Periodic };

/// Uniform 1-D grid. NoFlux grids carry nodes on both endpoints and span
/// [x0, x0 + (n-1) dx]; periodic grids tile [x0, x0 + n dx) with wraparound.
struct Grid1D {
  std::size_t n = 0;
  double dx = 0.0;
  double x0 = 0.0;
  Boundary boundary = Boundary::NoFlux;

  double x(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }
  /// Length of the covered interval (periodic: one full period n*dx).
  double extent() const {
    return boundary == Boundary::Periodic ? static_cast<double>(n) * dx
                                          : static_cast<double>(n - 1) * dx;
  }
  double x_end() const { return x0 + extent(); }
  /// Trapezoid quadrature weight of node i (1/2 at no-flux endpoints).
  double weight(std::size_t i) const {
    if (boundary == Boundary::NoFlux && (i == 0 || i + 1 == n)) return 0.5;
    return 1.0;
  }
  std::size_t nearest(double x_query) const;
};

void validate(const Grid1D& g);

/// Discrete activity/tension pair at one instant.
struct Fields {
  std::vector<double> u;
  std::vector<double> v;
  double t = 0.0;
};

/// Trapezoid-rule integral of f over the grid.
double integrate(const std::vector<double>& f, const Grid1D& g);

/// Second-order centered Laplacian. No-flux boundaries reflect through the
/// end nodes (ghost f[-1] = f[1]), which makes the trapezoid integral of the
/// result vanish identically; periodic boundaries wrap.
std::vector<double> laplacian(const std::vector<double>& f, const Grid1D& g);

}  // namespace riotwave
