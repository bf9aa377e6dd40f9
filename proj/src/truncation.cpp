// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include "sodlr/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sodlr/errors.hpp"

namespace sodlr {

int tail_rank(const Vector& singular_values, double tol) {
  const int n = int(singular_values.size());
  // Walk the tail from the smallest singular value upward.
  double tail_sq = 0.0;
  int r = n;
  while (r > 0) {
    const double next = tail_sq + singular_values(r - 1) * singular_values(r - 1);
    if (std::sqrt(next) > tol) break;
    tail_sq = next;
    --r;
  }
  return r;
}

double truncation_tolerance(const Vector& singular_values, const TruncationConfig& cfg) {
  if (cfg.theta < 0.0) throw std::invalid_argument("truncation: theta must be non-negative");
  if (cfg.mode == ThetaMode::absolute) return cfg.theta;
  const double smax = singular_values.size() > 0 ? singular_values(0) : 0.0;
  return cfg.theta * smax;
}

namespace {

/// Restores orthonormality of X lost to rounding over many steps:
/// X <- X L^{-T}, S <- L^T S with X^T X = L L^T, so X S is unchanged.
void refresh_orthonormality(LowRankState& s) {
  const Matrix g = s.X.transpose() * s.X;
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) return;
  const Matrix lt = llt.matrixU();
  lt.triangularView<Eigen::Upper>().solveInPlace<Eigen::OnTheRight>(s.X);
  s.S = lt.triangularView<Eigen::Upper>() * s.S;
}

void check_bounds(const TruncationConfig& cfg) {
  if (cfg.r_min < 1 || cfg.r_max < cfg.r_min)
    throw std::invalid_argument("truncation: need 1 <= r_min <= r_max");
}

}  // namespace

LowRankState truncate_standard(const Matrix& X, const Matrix& S, const Matrix& V,
                               const TruncationConfig& cfg) {
  check_bounds(cfg);
  Eigen::BDCSVD<Matrix> svd(S, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("truncate_standard: SVD failed");
  const Vector& sv = svd.singularValues();
  const int available = int(sv.size());

  int r1 = tail_rank(sv, truncation_tolerance(sv, cfg));
  if (r1 > cfg.r_max) throw RankOverflow(r1, cfg.r_max);
  r1 = std::min(std::max(r1, cfg.r_min), available);
  r1 = std::max(r1, 1);

  LowRankState out;
  out.X = X * svd.matrixU().leftCols(r1);
  out.V = V * svd.matrixV().leftCols(r1);
  out.S = sv.head(r1).asDiagonal();
  refresh_orthonormality(out);
  return out;
}

LowRankState truncate_conservative(const Matrix& X, const Matrix& S, const Matrix& V,
                                   const TruncationConfig& cfg) {
  check_bounds(cfg);
  const Eigen::Index kx = X.cols();
  const Eigen::Index m = V.rows();
  if (V.cols() < 1 || S.cols() != V.cols() || S.rows() != kx || kx < 1)
    throw std::invalid_argument("truncate_conservative: inconsistent factor shapes");

  // Work in the coordinates of the orthonormal X: K = X S, so the columns of
  // S are the coordinates of the columns of K and every QR below acts on
  // small coefficient matrices. X enters once at the end.

  // 1. split K into the column paired with e_1 and the remainder
  const Vector c_cons = S.col(0);
  const Matrix c_rem = S.rightCols(S.cols() - 1);
  const Matrix v_rem_full = V.rightCols(V.cols() - 1);

  // 2. normalized conserved column; a zero column gets an arbitrary unit vector
  const double s_cons = c_cons.norm();
  Vector x_cons = Vector::Zero(kx);
  if (s_cons > 0.0) x_cons = c_cons / s_cons;
  else x_cons(0) = 1.0;

  // 3.-4. QR of the remainder, SVD of its triangular factor, tail truncation
  Matrix x_rem, v_rem;
  Vector s_rem;
  if (c_rem.cols() > 0) {
    const ThinQR qr = thin_qr(c_rem);
    Eigen::BDCSVD<Matrix> svd(qr.R, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw NumericalError("truncate_conservative: SVD failed");
    const Vector& sv = svd.singularValues();
    // [x_cons, x_rem] must stay independent inside span(X).
    const int structural = int(std::min<Eigen::Index>({Eigen::Index(sv.size()), kx - 1, m - 1}));

    int r_rem = tail_rank(sv, truncation_tolerance(sv, cfg));
    if (1 + r_rem > cfg.r_max) throw RankOverflow(1 + r_rem, cfg.r_max);
    r_rem = std::max(r_rem, cfg.r_min - 1);
    r_rem = std::min(r_rem, structural);
    r_rem = std::max(r_rem, 0);

    x_rem = qr.Q * svd.matrixU().leftCols(r_rem);
    v_rem = v_rem_full * svd.matrixV().leftCols(r_rem);
    s_rem = sv.head(r_rem);
  } else {
    x_rem = Matrix::Zero(kx, 0);
    v_rem = Matrix::Zero(m, 0);
    s_rem = Vector::Zero(0);
  }
  const Eigen::Index r_rem = s_rem.size();

  // 5. re-orthonormalize [x_cons, x_rem] and [e_1, v_rem]
  Matrix x_hat(kx, 1 + r_rem), v_hat(m, 1 + r_rem);
  x_hat << x_cons, x_rem;
  Vector e1 = Vector::Zero(m);
  e1(0) = 1.0;
  v_hat << e1, v_rem;
  const ThinQR qx = thin_qr(x_hat);
  const ThinQR qv = thin_qr(v_hat);

  // 6. S^1 = R^1 blockdiag(s_cons, s_rem) R^{2,T}
  Vector diag(1 + r_rem);
  diag << s_cons, s_rem;
  LowRankState out;
  out.X = X * qx.Q;
  out.V = qv.Q;
  out.S = qx.R * diag.asDiagonal() * qv.R.transpose();
  refresh_orthonormality(out);
  return out;
}

}  // namespace sodlr
