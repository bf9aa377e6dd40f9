// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include "sodlr/linalg.hpp"

namespace sodlr {

/// Uniform periodic finite-volume grid on [x_min, x_max].
class Grid1D {
 public:
  Grid1D(int n_x, double x_min, double x_max);

  int n_x() const { return n_x_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double dx() const { return (x_max_ - x_min_) / n_x_; }
  double center(int p) const { return x_min_ + (p + 0.5) * dx(); }
  std::vector<double> centers() const;

  /// Periodic index wrap into [0, n_x).
  int wrap(int p) const { return ((p % n_x_) + n_x_) % n_x_; }

 private:
  int n_x_;
  double x_min_;
  double x_max_;
};

/// Constant-coefficient periodic tridiagonal matrix
///   (M z)_p = lower z_{p-1} + diag z_p + upper z_{p+1}
/// with periodic wraparound. Applies along one axis of a tensor grid whose
/// cells are numbered with `stride` between neighbours along that axis.
struct PeriodicStencil {
  int n = 0;
  double lower = 0.0;
  double diag = 0.0;
  double upper = 0.0;

  /// out = M * in for a single-axis grid (rows of `in` are cells).
  Matrix apply(const Matrix& in) const;

  /// out = (M along the axis) * in for a tensor grid of `n_cells` cells where
  /// moving one cell along the axis advances the cell index by `stride`.
  Matrix apply_axis(const Matrix& in, int stride) const;

  /// Accumulate out += scale * M * in along an axis.
  void apply_axis_add(const Matrix& in, int stride, double scale, Matrix& out) const;

  Matrix to_dense() const;
};

/// Stabilized central stencils on a periodic grid:
///   Dx    : +-1/(2 dx) on the super/sub diagonal (approximates d/dx),
///   Dxx   : -1/dx diagonal, 1/(2 dx) off-diagonals (approximates dx/2 d^2/dx^2),
///   Dplus : -1/sqrt(2 dx) diagonal, 1/sqrt(2 dx) superdiagonal,
/// satisfying Dxx = -Dplus^T Dplus.
struct Stencils {
  PeriodicStencil Dx;
  PeriodicStencil Dxx;
  PeriodicStencil Dplus;
};

/// Throws std::invalid_argument for n_x < 3.
Stencils build_stencils(const Grid1D& grid);

/// Eigenvalues of the stencils on the discrete Fourier mode
/// z_p = exp(i omega p), omega = 2 pi alpha / n_x.
struct FourierSymbol {
  double omega = 0.0;
  std::complex<double> dx;
  std::complex<double> dxx;
  std::complex<double> dplus;
};

FourierSymbol fourier_symbol(double omega, double dx);

/// One symbol per discrete frequency alpha = 0..n_x-1.
std::vector<FourierSymbol> fourier_symbols(const Grid1D& grid);

}  // namespace sodlr
