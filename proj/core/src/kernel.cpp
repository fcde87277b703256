#include "riotwave/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace riotwave {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

double wrapped_distance(double r, const Grid1D& g) {
  if (g.boundary != Boundary::Periodic) return r;
  const double L = g.extent();
  r = std::fmod(r, L);
  if (r > 0.5 * L) r -= L;
  if (r < -0.5 * L) r += L;
  return r;
}

}  // namespace

KernelSpec KernelSpec::gaussian(double sigma) {
  if (!(sigma > 0.0)) throw config_error("kernel: gaussian sigma must be > 0");
  KernelSpec ks;
  ks.kind = Kind::Gaussian;
  ks.sigma = sigma;
  return ks;
}

KernelSpec KernelSpec::top_hat(double radius) {
  if (!(radius > 0.0)) throw config_error("kernel: tophat radius must be > 0");
  KernelSpec ks;
  ks.kind = Kind::TopHat;
  ks.radius = radius;
  return ks;
}

KernelSpec KernelSpec::general(std::vector<double> matrix) {
  for (double x : matrix) {
    if (!(x >= 0.0)) throw config_error("kernel: general matrix entries must be >= 0");
  }
  KernelSpec ks;
  ks.kind = Kind::General;
  ks.matrix = std::move(matrix);
  return ks;
}

double kernel_profile(const KernelSpec& ks, double r) {
  switch (ks.kind) {
    case KernelSpec::Kind::Gaussian: {
      const double z = r / ks.sigma;
      return kInvSqrt2Pi / ks.sigma * std::exp(-0.5 * z * z);
    }
    case KernelSpec::Kind::TopHat:
      return std::abs(r) <= ks.radius ? 0.5 / ks.radius : 0.0;
    default:
      return 0.0;
  }
}

std::vector<double> kernel_dense_matrix(const KernelSpec& ks, const Grid1D& g) {
  std::vector<double> m(g.n * g.n, 0.0);
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = 0; j < g.n; ++j) {
      m[i * g.n + j] = kernel_profile(ks, wrapped_distance(g.x(i) - g.x(j), g));
    }
  }
  return m;
}

double kernel_row_bound(const KernelSpec& ks, const Grid1D& g) {
  if (ks.kind == KernelSpec::Kind::None) return 0.0;
  double bound = 0.0;
  if (ks.kind == KernelSpec::Kind::General) {
    if (ks.matrix.size() != g.n * g.n) {
      throw config_error("kernel: general matrix size does not match grid");
    }
    for (std::size_t i = 0; i < g.n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < g.n; ++j) {
        row += ks.matrix[i * g.n + j] * g.weight(j);
      }
      bound = std::max(bound, row * g.dx);
    }
    return bound;
  }
  for (std::size_t i = 0; i < g.n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
      row += kernel_profile(ks, wrapped_distance(g.x(i) - g.x(j), g)) * g.weight(j);
    }
    bound = std::max(bound, row * g.dx);
  }
  return bound;
}

std::vector<double> nonlocal_term(const std::vector<double>& v, const KernelSpec& ks,
                                  const Grid1D& g) {
  if (v.size() != g.n) throw config_error("nonlocal_term: field length != grid size");
  std::vector<double> out(g.n, 0.0);
  if (ks.kind == KernelSpec::Kind::None) return out;

  if (ks.kind == KernelSpec::Kind::General) {
    if (ks.matrix.size() != g.n * g.n) {
      throw config_error("kernel: general matrix size does not match grid");
    }
    for (std::size_t i = 0; i < g.n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < g.n; ++j) {
        acc += ks.matrix[i * g.n + j] * v[j] * g.weight(j);
      }
      out[i] = acc * g.dx;
    }
    return out;
  }

  // Translation-invariant: convolution with the profile sampled at node
  // separations (profile values cached per offset).
  std::vector<double> prof(g.n);
  for (std::size_t d = 0; d < g.n; ++d) {
    prof[d] = kernel_profile(ks, wrapped_distance(static_cast<double>(d) * g.dx, g));
  }
  for (std::size_t i = 0; i < g.n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
      const std::size_t d = i >= j ? i - j : j - i;
      acc += prof[d] * v[j] * g.weight(j);
    }
    out[i] = acc * g.dx;
  }
  return out;
}

}  // namespace riotwave
