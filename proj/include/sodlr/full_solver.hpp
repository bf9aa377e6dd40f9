// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sodlr/linalg.hpp"
#include "sodlr/transport.hpp"

namespace sodlr {

/// Dense moment matrix u (n_cells x n_moments) and internal energy B.
struct FullState {
  Matrix u;
  Vector B;
  double t = 0.0;
};

/// Solution of the per-cell implicit absorption/emission system
///   (1 + s) u - s B = c,   -s u + (1 + s) B = b0,   s = sigma dt.
struct CoupledCell {
  double u;
  double B;
};

inline CoupledCell solve_coupled_cell(double c, double b0, double sigma, double dt) {
  const double s = sigma * dt;
  const double det = 1.0 + 2.0 * s;
  return {((1.0 + s) * c + s * b0) / det, ((1.0 + s) * b0 + s * c) / det};
}

/// One step of the full coupled-implicit scheme: explicit stabilized
/// transport, then the 2x2 implicit solve for (u_0, B) per cell and implicit
/// absorption of the higher moments. `source` (may be null) adds dt * Q_j to
/// the zeroth moment. Throws NumericalBlowup on non-finite results.
FullState full_step(const FullState& state, const Discretization& disc, double sigma, double dt,
                    const Vector* source = nullptr);

}  // namespace sodlr
