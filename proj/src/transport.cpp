// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include "sodlr/transport.hpp"

#include <algorithm>
#include <stdexcept>

namespace sodlr {

Mesh::Mesh(std::vector<Grid1D> axes) : axes_(std::move(axes)), n_cells_(1) {
  if (axes_.empty()) throw std::invalid_argument("Mesh: need at least one axis");
  for (const auto& a : axes_) n_cells_ *= a.n_x();
}

int Mesh::stride(int d) const {
  int s = 1;
  for (int k = 0; k < d; ++k) s *= axes_.at(k).n_x();
  return s;
}

double Mesh::cell_volume() const {
  double v = 1.0;
  for (const auto& a : axes_) v *= a.dx();
  return v;
}

double Mesh::min_dx() const {
  double m = axes_.front().dx();
  for (const auto& a : axes_) m = std::min(m, a.dx());
  return m;
}

Discretization::Discretization(Mesh mesh, std::vector<StreamingDirection> directions)
    : mesh_(std::move(mesh)), directions_(std::move(directions)), n_moments_(0) {
  if (directions_.empty()) throw std::invalid_argument("Discretization: no streaming directions");
  n_moments_ = directions_.front().flux.n_moments;
  for (const auto& d : directions_) {
    if (d.axis < 0 || d.axis >= mesh_.dim())
      throw std::invalid_argument("Discretization: direction axis out of range");
    if (d.flux.n_moments != n_moments_)
      throw std::invalid_argument("Discretization: inconsistent moment counts");
    if (d.stencils.Dx.n != mesh_.axis(d.axis).n_x())
      throw std::invalid_argument("Discretization: stencil size does not match axis");
  }
}

Discretization Discretization::slab(const Grid1D& grid, const FluxMatrices& flux) {
  return Discretization(Mesh({grid}), {StreamingDirection{0, build_stencils(grid), flux}});
}

Matrix Discretization::apply_dx(int direction, const Matrix& in) const {
  const auto& d = directions_.at(direction);
  return d.stencils.Dx.apply_axis(in, mesh_.stride(d.axis));
}

Matrix Discretization::apply_dxx(int direction, const Matrix& in) const {
  const auto& d = directions_.at(direction);
  return d.stencils.Dxx.apply_axis(in, mesh_.stride(d.axis));
}

Matrix Discretization::apply(const Matrix& u) const {
  Matrix out = Matrix::Zero(u.rows(), u.cols());
  for (const auto& d : directions_) {
    const int stride = mesh_.stride(d.axis);
    const Matrix ua = u * d.flux.A.transpose();
    const Matrix uabs = u * d.flux.A_abs.transpose();
    d.stencils.Dx.apply_axis_add(ua, stride, -1.0, out);
    d.stencils.Dxx.apply_axis_add(uabs, stride, 1.0, out);
  }
  return out;
}

Vector Discretization::apply_zeroth(const Matrix& X, const Matrix& C, const Matrix& W) const {
  Matrix out = Matrix::Zero(X.rows(), 1);
  for (const auto& d : directions_) {
    const int stride = mesh_.stride(d.axis);
    // (u A^T) e_1 = X C (W^T A^T e_1) = X C W^T (row 0 of A)^T
    const Vector wa = W.transpose() * d.flux.A.row(0).transpose();
    const Vector wabs = W.transpose() * d.flux.A_abs.row(0).transpose();
    const Matrix ca = X * (C * wa);
    const Matrix cabs = X * (C * wabs);
    d.stencils.Dx.apply_axis_add(ca, stride, -1.0, out);
    d.stencils.Dxx.apply_axis_add(cabs, stride, 1.0, out);
  }
  return out.col(0);
}

}  // namespace sodlr
