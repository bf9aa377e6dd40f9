// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "sodlr/angular_basis.hpp"
#include "sodlr/spatial_grid.hpp"

namespace sodlr {

/// Tensor-product periodic mesh. Cell index j = i_0 + n_0 * (i_1 + n_1 * ...),
/// i.e. the first axis runs fastest.
class Mesh {
 public:
  explicit Mesh(std::vector<Grid1D> axes);

  int dim() const { return int(axes_.size()); }
  const Grid1D& axis(int d) const { return axes_.at(d); }
  int n_cells() const { return n_cells_; }
  /// Index step between neighbours along axis d.
  int stride(int d) const;
  double cell_volume() const;
  /// Smallest cell width over all axes.
  double min_dx() const;

 private:
  std::vector<Grid1D> axes_;
  int n_cells_;
};

/// One streaming direction: stencils along a mesh axis paired with the
/// moment-space flux matrices of the matching direction cosine.
struct StreamingDirection {
  int axis = 0;
  Stencils stencils;
  FluxMatrices flux;
};

/// Spatial + angular discretization of the streaming operator
///   F(u) = sum_d ( -Dx_d u A_d^T + Dxx_d u |A_d|^T ).
class Discretization {
 public:
  Discretization(Mesh mesh, std::vector<StreamingDirection> directions);

  /// 1D periodic slab with Legendre moments.
  static Discretization slab(const Grid1D& grid, const FluxMatrices& flux);

  const Mesh& mesh() const { return mesh_; }
  const std::vector<StreamingDirection>& directions() const { return directions_; }
  int n_cells() const { return mesh_.n_cells(); }
  int n_moments() const { return n_moments_; }

  /// Dense F(u) for u of shape n_cells x n_moments.
  Matrix apply(const Matrix& u) const;

  /// Zeroth-moment column of F(u) for a factored u = X C W^T (C may be
  /// rectangular). Costs O(n_cells * rank) per direction.
  Vector apply_zeroth(const Matrix& X, const Matrix& C, const Matrix& W) const;

  /// Stencil of a direction applied along its axis.
  Matrix apply_dx(int direction, const Matrix& in) const;
  Matrix apply_dxx(int direction, const Matrix& in) const;

 private:
  Mesh mesh_;
  std::vector<StreamingDirection> directions_;
  int n_moments_;
};

}  // namespace sodlr
