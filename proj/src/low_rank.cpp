// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include "sodlr/low_rank.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sodlr {

Matrix complete_basis(const Matrix& basis, int r) {
  const Eigen::Index n = basis.rows();
  const Eigen::Index k = basis.cols();
  if (r > n || k > r) throw std::invalid_argument("complete_basis: need k <= r <= n");
  if (k == 0) return Matrix::Identity(n, r);
  Eigen::HouseholderQR<Matrix> qr(basis);
  Matrix q = qr.householderQ() * Matrix::Identity(n, r);
  q.leftCols(k) = basis;
  return q;
}

LowRankState low_rank_from_factors(const Matrix& F, const Matrix& G, int r) {
  if (F.cols() != G.cols()) throw std::invalid_argument("low_rank_from_factors: inner size mismatch");
  if (r < 1) throw std::invalid_argument("low_rank_from_factors: rank must be >= 1");
  const int cap = int(std::min(F.rows(), G.rows()));
  r = std::min(r, cap);

  const ThinQR qf = thin_qr(F);
  const ThinQR qg = thin_qr(G);
  const Matrix core = qf.R * qg.R.transpose();
  Eigen::BDCSVD<Matrix> svd(core, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();

  int k = 0;
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double tiny = smax * std::numeric_limits<double>::epsilon() * double(std::max(F.rows(), G.rows()));
  while (k < sv.size() && sv(k) > tiny && k < r) ++k;

  LowRankState s;
  s.X = complete_basis(qf.Q * svd.matrixU().leftCols(k), r);
  s.V = complete_basis(qg.Q * svd.matrixV().leftCols(k), r);
  s.S = Matrix::Zero(r, r);
  for (int i = 0; i < k; ++i) s.S(i, i) = sv(i);
  return s;
}

LowRankState factorize(const Matrix& u, int r) {
  return low_rank_from_factors(u, Matrix::Identity(u.cols(), u.cols()), r);
}

}  // namespace sodlr
