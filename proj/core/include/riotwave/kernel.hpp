#pragma once

#include <vector>

#include "riotwave/grid.hpp"

namespace riotwave {

/// Non-local influence kernel for the tension equation. TranslationInvariant
/// kernels are a function of the (boundary-aware) node distance; General
/// carries an explicit nonnegative n-by-n matrix.
struct KernelSpec {
  enum class Kind { None, Gaussian, TopHat, General };
  Kind kind = Kind::None;
  double sigma = 1.0;      // Gaussian
  double radius = 1.0;     // TopHat
  std::vector<double> matrix;  // General, row-major n*n

  static KernelSpec none() { return {}; }
  static KernelSpec gaussian(double sigma);
  static KernelSpec top_hat(double radius);
  static KernelSpec general(std::vector<double> matrix);
};

/// Kernel profile value at signed separation r (continuum-normalized to unit
/// mass on the line).
double kernel_profile(const KernelSpec& ks, double r);

/// sup over rows of the discrete integral sum_j J(x_i, y_j) w_j dx. This is
/// the quantity the growth bound of the tension field depends on; reported
/// with every trajectory.
double kernel_row_bound(const KernelSpec& ks, const Grid1D& g);

/// Trapezoid-rule evaluation of the influence integral at every node:
/// out_i = sum_j J(x_i, y_j) v_j w_j dx. Translation-invariant kernels are
/// evaluated as a discrete convolution of the profile (minimum-image
/// distance on periodic grids); General as a dense matrix-vector product.
/// Both paths use the same summation order so they agree bit-for-bit when
/// the matrix is built from the same profile.
std::vector<double> nonlocal_term(const std::vector<double>& v, const KernelSpec& ks,
                                  const Grid1D& g);

/// Dense matrix equivalent to a translation-invariant kernel on this grid;
/// the dual evaluation path used by the agreement checks.
std::vector<double> kernel_dense_matrix(const KernelSpec& ks, const Grid1D& g);

}  // namespace riotwave
