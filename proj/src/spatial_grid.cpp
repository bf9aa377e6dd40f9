// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include "sodlr/spatial_grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sodlr {

Grid1D::Grid1D(int n_x, double x_min, double x_max) : n_x_(n_x), x_min_(x_min), x_max_(x_max) {
  if (n_x < 1) throw std::invalid_argument("Grid1D: n_x must be positive");
  if (!(x_max > x_min)) throw std::invalid_argument("Grid1D: x_max must exceed x_min");
}

std::vector<double> Grid1D::centers() const {
  std::vector<double> c(n_x_);
  for (int p = 0; p < n_x_; ++p) c[p] = center(p);
  return c;
}

Matrix PeriodicStencil::apply(const Matrix& in) const { return apply_axis(in, 1); }

Matrix PeriodicStencil::apply_axis(const Matrix& in, int stride) const {
  Matrix out = Matrix::Zero(in.rows(), in.cols());
  apply_axis_add(in, stride, 1.0, out);
  return out;
}

void PeriodicStencil::apply_axis_add(const Matrix& in, int stride, double scale,
                                     Matrix& out) const {
  const Eigen::Index n_cells = in.rows();
  const Eigen::Index line = Eigen::Index(n) * stride;
  if (n_cells % line != 0)
    throw std::invalid_argument("PeriodicStencil: cell count incompatible with stencil axis");
  if (out.rows() != in.rows() || out.cols() != in.cols())
    throw std::invalid_argument("PeriodicStencil: output shape mismatch");
  const double lo = scale * lower, di = scale * diag, up = scale * upper;
  const Eigen::Index st = stride;
  for (Eigen::Index c = 0; c < in.cols(); ++c) {
    const double* src = in.col(c).data();
    double* dst = out.col(c).data();
    for (Eigen::Index block = 0; block < n_cells; block += line) {
      if (st == 1) {
        const double* a = src + block;
        double* d = dst + block;
        d[0] += lo * a[n - 1] + di * a[0] + up * a[1];
        for (int p = 1; p < n - 1; ++p) d[p] += lo * a[p - 1] + di * a[p] + up * a[p + 1];
        d[n - 1] += lo * a[n - 2] + di * a[n - 1] + up * a[0];
        continue;
      }
      // Each position p along the axis owns a contiguous run of `stride`
      // cells, so the inner loop is unit-stride.
      for (int p = 0; p < n; ++p) {
        const double* sm = src + block + Eigen::Index(p == 0 ? n - 1 : p - 1) * st;
        const double* s0 = src + block + Eigen::Index(p) * st;
        const double* sp = src + block + Eigen::Index(p == n - 1 ? 0 : p + 1) * st;
        double* d = dst + block + Eigen::Index(p) * st;
        for (Eigen::Index k = 0; k < st; ++k) d[k] += lo * sm[k] + di * s0[k] + up * sp[k];
      }
    }
  }
}

Matrix PeriodicStencil::to_dense() const {
  Matrix m = Matrix::Zero(n, n);
  for (int p = 0; p < n; ++p) {
    m(p, (p + n - 1) % n) += lower;
    m(p, p) += diag;
    m(p, (p + 1) % n) += upper;
  }
  return m;
}

Stencils build_stencils(const Grid1D& grid) {
  const int n = grid.n_x();
  if (n < 3)
    throw std::invalid_argument("build_stencils: need n_x >= 3, got " + std::to_string(n));
  const double dx = grid.dx();
  Stencils s;
  s.Dx = {n, -1.0 / (2.0 * dx), 0.0, 1.0 / (2.0 * dx)};
  s.Dxx = {n, 1.0 / (2.0 * dx), -1.0 / dx, 1.0 / (2.0 * dx)};
  const double c = 1.0 / std::sqrt(2.0 * dx);
  s.Dplus = {n, 0.0, -c, c};
  return s;
}

FourierSymbol fourier_symbol(double omega, double dx) {
  using namespace std::complex_literals;
  FourierSymbol f;
  f.omega = omega;
  f.dx = 1i * std::sin(omega) / dx;
  f.dxx = std::complex<double>((std::cos(omega) - 1.0) / dx, 0.0);
  f.dplus = (std::cos(omega) + 1i * std::sin(omega) - 1.0) / std::sqrt(2.0 * dx);
  return f;
}

std::vector<FourierSymbol> fourier_symbols(const Grid1D& grid) {
  if (grid.n_x() < 3) throw std::invalid_argument("fourier_symbols: need n_x >= 3");
  std::vector<FourierSymbol> out;
  out.reserve(grid.n_x());
  for (int a = 0; a < grid.n_x(); ++a)
    out.push_back(fourier_symbol(2.0 * std::numbers::pi * a / grid.n_x(), grid.dx()));
  return out;
}

}  // namespace sodlr
