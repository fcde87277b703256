#pragma once

#include <vector>

#include "riotwave/grid.hpp"

namespace riotwave {

/// Piecewise-constant restriction-of-information profile alpha(x). Pieces are
/// half-open [from, to) except the last, which also claims its right endpoint
/// so a no-flux grid is covered exactly.
struct EnvironmentProfile {
  struct Piece {
    double from = 0.0;
    double to = 0.0;
    double alpha = 0.0;
  };
  std::vector<Piece> pieces;

  static EnvironmentProfile uniform(double alpha, double from, double to);

  double alpha_at(double x) const;
  /// alpha sampled at every grid node; validates coverage and 0 <= alpha <= 1.
  std::vector<double> node_alphas(const Grid1D& g) const;
  void check(const Grid1D& g) const;
};

/// One period of a periodically fragmented environment: patches partition
/// [0, L) and the pattern repeats `repetitions` times.
struct PeriodicEnv {
  double period = 1.0;
  struct Patch {
    double from = 0.0;
    double to = 0.0;
    double alpha = 0.0;
  };
  std::vector<Patch> patches;
  int repetitions = 1;

  void check() const;
  /// Tiles the pattern across [x0, x0 + period * repetitions].
  EnvironmentProfile tile(double x0) const;
  /// Profile over exactly one period (for the periodic eigenproblem).
  EnvironmentProfile one_period(double x0) const;
};

/// Three consecutive regions: the middle one fully censored (alpha = 1).
struct GapEnv {
  double s1_end = 5.0;   // S1 = [x0, s1_end)
  double s2_end = 7.0;   // S2 = [s1_end, s2_end), alpha = 1
  double alpha1 = 0.0;   // S1 restriction level, in [0,1)
  double alpha2 = 0.0;   // S3 restriction level, in [0,1)

  void check(double x0, double x_end) const;
  EnvironmentProfile profile(double x0, double x_end) const;
  double width() const { return s2_end - s1_end; }
};

}  // namespace riotwave
