// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include "sodlr/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <cmath>
#include <vector>

namespace sodlr {

ThinQR thin_qr(const Matrix& a) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index k = std::min(a.rows(), a.cols());
  ThinQR out;
  if (k == 0) {
    out.Q = Matrix::Zero(rows, 0);
    out.R = Matrix::Zero(0, a.cols());
    return out;
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  out.Q = qr.householderQ() * Matrix::Identity(rows, k);
  out.R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < k; ++i) {
    if (out.R(i, i) < 0.0) {
      out.Q.col(i) *= -1.0;
      out.R.row(i) *= -1.0;
    }
  }
  return out;
}

Matrix orthonormal_basis(const Matrix& a) { return thin_qr(a).Q; }

namespace {

/// Replaces Y by an orthonormal basis of its well-conditioned directions:
/// eigenvectors of Y^T Y with eigenvalues above (cut * lambda_max).
/// Returns the number of columns kept (at most `limit`).
Matrix gram_orthonormalize(const Matrix& y, double cut, Eigen::Index limit) {
  const Matrix g = y.transpose() * y;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g);
  if (eig.info() != Eigen::Success) return Matrix(y.rows(), 0);
  const Vector& lam = eig.eigenvalues();  // ascending
  const double lmax = lam.size() ? lam(lam.size() - 1) : 0.0;
  if (!(lmax > 0.0)) return Matrix(y.rows(), 0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = lam.size() - 1; i >= 0 && Eigen::Index(keep.size()) < limit; --i)
    if (lam(i) > cut * lmax) keep.push_back(i);
  Matrix t(y.cols(), Eigen::Index(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    t.col(Eigen::Index(c)) = eig.eigenvectors().col(keep[c]) / std::sqrt(lam(keep[c]));
  return y * t;
}

}  // namespace

Matrix extend_orthonormal(const Matrix& q, const Matrix& w, double drop_tol) {
  const Eigen::Index n = q.rows();
  if (w.rows() != n) throw std::invalid_argument("extend_orthonormal: row mismatch");
  const Eigen::Index cap = std::min(n - q.cols(), w.cols());
  const double scale = w.norm();
  if (cap <= 0 || !(scale > 0.0)) return q;

  Matrix basis = q;
  Matrix r = w;
  Eigen::Index added = 0;
  bool settled = false;
  for (int round = 0; round < 8; ++round) {
    for (int pass = 0; pass < 2; ++pass) r.noalias() -= basis * (basis.transpose() * r);
    if (r.norm() <= drop_tol * scale || added == cap) {
      settled = true;
      break;
    }
    // Keep directions with condition <= 1e6 so that the Gram step loses at
    // most ~1e-4 orthogonality; the second pass below restores it.
    Matrix fresh = gram_orthonormalize(r, 1e-12, cap - added);
    if (fresh.cols() == 0) break;
    fresh.noalias() -= basis * (basis.transpose() * fresh);
    fresh = gram_orthonormalize(fresh, 1e-12, fresh.cols());
    if (fresh.cols() == 0) break;
    Matrix grown(n, basis.cols() + fresh.cols());
    grown << basis, fresh;
    basis.swap(grown);
    added += fresh.cols();
  }
  if (settled) return basis;

  // Fallback: Householder QR of [Q, W]; keep Q itself as the leading block.
  Matrix full = thin_qr(hcat(q, w)).Q;
  full.leftCols(q.cols()) = q;
  return full;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

double orthonormality_defect(const Matrix& q) {
  if (q.cols() == 0) return 0.0;
  return (q.transpose() * q - Matrix::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace sodlr
