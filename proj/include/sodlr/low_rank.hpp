// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sodlr/linalg.hpp"

namespace sodlr {

/// Factored moments u = X S V^T with orthonormal X (n_cells x r) and
/// V (n_moments x r).
struct LowRankState {
  Matrix X;
  Matrix S;
  Matrix V;
  double t = 0.0;

  int rank() const { return int(S.rows()); }
  Matrix dense() const { return X * S * V.transpose(); }
  /// Zeroth-moment column X S (V^T e_1).
  Vector zeroth_moment() const { return X * (S * V.row(0).transpose()); }
};

/// Orthonormal n x r matrix whose first k columns are exactly `basis`
/// (assumed orthonormal, k <= r <= n); the rest is a Householder completion.
Matrix complete_basis(const Matrix& basis, int r);

/// Rank-r factorization of u = F G^T. Directions beyond the numerical rank of
/// F G^T are filled with orthonormal completion columns and zero singular
/// values. r is clamped to min(rows(F), rows(G)).
LowRankState low_rank_from_factors(const Matrix& F, const Matrix& G, int r);

/// Rank-r factorization of a dense moment matrix.
LowRankState factorize(const Matrix& u, int r);

}  // namespace sodlr
