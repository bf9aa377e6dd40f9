// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include "sodlr/full_solver.hpp"

#include <stdexcept>

#include "sodlr/errors.hpp"

namespace sodlr {

FullState full_step(const FullState& state, const Discretization& disc, double sigma, double dt,
                    const Vector* source) {
  if (!(dt > 0.0)) throw std::invalid_argument("full_step: dt must be positive");
  if (state.u.rows() != disc.n_cells() || state.u.cols() != disc.n_moments() ||
      state.B.size() != disc.n_cells())
    throw std::invalid_argument("full_step: state dimensions do not match the discretization");
  if (source && source->size() != disc.n_cells())
    throw std::invalid_argument("full_step: source has wrong length");

  FullState next;
  next.u = state.u + dt * disc.apply(state.u);
  if (source) next.u.col(0) += dt * (*source);

  const double damp = 1.0 / (1.0 + sigma * dt);
  next.u.rightCols(next.u.cols() - 1) *= damp;
  next.B.resize(state.B.size());
  for (Eigen::Index j = 0; j < next.B.size(); ++j) {
    const CoupledCell c = solve_coupled_cell(next.u(j, 0), state.B(j), sigma, dt);
    next.u(j, 0) = c.u;
    next.B(j) = c.B;
  }
  next.t = state.t + dt;
  if (!all_finite(next.u) || !next.B.allFinite())
    throw NumericalBlowup("full_step: non-finite values in state");
  return next;
}

}  // namespace sodlr
