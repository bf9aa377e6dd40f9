// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sodlr/linalg.hpp"
#include "sodlr/low_rank.hpp"

namespace sodlr {

enum class ThetaMode { relative, absolute };
enum class TruncationStrategy { conservative, standard };

/// Truncation threshold and rank bounds. In relative mode the tolerance is
/// theta * ||Sigma||_2 (largest singular value of the matrix being truncated).
struct TruncationConfig {
  double theta = 0.1;
  ThetaMode mode = ThetaMode::relative;
  int r_min = 1;
  int r_max = 100;
};

/// Smallest r such that (sum_{j >= r} sigma_j^2)^{1/2} <= tol, for singular
/// values sorted in decreasing order.
int tail_rank(const Vector& singular_values, double tol);

/// Absolute tolerance implied by cfg for the given singular values.
double truncation_tolerance(const Vector& singular_values, const TruncationConfig& cfg);

/// Rank-adaptive BUG truncation: SVD of the coefficient matrix, keep the
/// leading triplets by the tail criterion, clamped to [r_min, r_max].
/// Throws RankOverflow if the criterion needs more than r_max.
LowRankState truncate_standard(const Matrix& X, const Matrix& S, const Matrix& V,
                               const TruncationConfig& cfg);

/// Mass-conservative truncation. Requires V.col(0) == e_1. The column of
/// K = X S paired with e_1 (the zeroth moment) is kept exactly; only the
/// remaining columns are QR-factorized and SVD-truncated. The returned rank is
/// 1 + (remainder rank), clamped to [r_min, r_max].
LowRankState truncate_conservative(const Matrix& X, const Matrix& S, const Matrix& V,
                                   const TruncationConfig& cfg);

}  // namespace sodlr
