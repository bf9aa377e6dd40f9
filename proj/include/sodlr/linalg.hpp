// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

namespace sodlr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thin QR factorization A = Q R with Q of width k = min(rows, cols).
///
/// Householder based, so Q has orthonormal columns even when A is rank
/// deficient: numerically null columns of A get orthonormal completion
/// vectors in Q and a (near) zero diagonal entry in R. The diagonal of R is
/// made non-negative, which makes the factorization unique for full-rank A
/// and keeps a leading unit column (e.g. e1) exactly in place.
struct ThinQR {
  Matrix Q;  // rows x k
  Matrix R;  // k x cols, upper triangular
};

ThinQR thin_qr(const Matrix& a);

/// Orthonormal basis whose leading columns span the leading columns of `a`.
Matrix orthonormal_basis(const Matrix& a);

/// Extends an orthonormal basis Q (kept verbatim as the leading columns) by
/// orthonormal directions spanning the part of range(W) orthogonal to Q.
/// Components of W below `drop_tol * |W|_F` are discarded, so the result may
/// be narrower than Q.cols() + W.cols(). Built from matrix products (block
/// Gram-Schmidt with re-orthogonalization), falling back to Householder QR
/// when the iteration does not settle.
Matrix extend_orthonormal(const Matrix& q, const Matrix& w, double drop_tol = 1e-14);

/// Horizontal concatenation [a, b].
Matrix hcat(const Matrix& a, const Matrix& b);

/// max |(Q^T Q - I)_ij|
double orthonormality_defect(const Matrix& q);

/// True if every entry is finite.
bool all_finite(const Matrix& m);

}  // namespace sodlr
