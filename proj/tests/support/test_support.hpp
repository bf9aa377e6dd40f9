// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

// Hand-rolled generators and small dense oracles shared by the unit tests and
// the acceptance binary. Nothing here calls into the solver stack except for
// the data types.

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>

#include "sodlr/linalg.hpp"

namespace sodlr::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 20260101) : eng_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

  Matrix matrix(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal();
    return m;
  }
  Vector vector(Eigen::Index n) { return matrix(n, 1).col(0); }

  // Columns orthonormal via Householder QR of a Gaussian matrix.
  Matrix orthonormal(Eigen::Index rows, Eigen::Index cols) {
    Eigen::HouseholderQR<Matrix> qr(matrix(rows, cols));
    return qr.householderQ() * Matrix::Identity(rows, cols);
  }

  // Square matrix with prescribed singular values and random singular vectors.
  Matrix with_singular_values(const Vector& sv) {
    const Eigen::Index r = sv.size();
    return orthonormal(r, r) * sv.asDiagonal() * orthonormal(r, r).transpose();
  }

 private:
  std::mt19937_64 eng_;
};

inline double rel_diff(const Matrix& a, const Matrix& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale > 0.0 ? (a - b).norm() / scale : 0.0;
}

// Dense periodic tridiagonal matrix, built entry by entry.
inline Matrix periodic_tridiag(int n, double lower, double diag, double upper) {
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, (i + n - 1) % n) += lower;
    m(i, i) += diag;
    m(i, (i + 1) % n) += upper;
  }
  return m;
}

// Central difference, second difference and forward difference as dense
// matrices with the reference scalings.
inline Matrix dense_dx(int n, double h) { return periodic_tridiag(n, -0.5 / h, 0.0, 0.5 / h); }
inline Matrix dense_dxx(int n, double h) { return periodic_tridiag(n, 0.5 / h, -1.0 / h, 0.5 / h); }
inline Matrix dense_dplus(int n, double h) {
  const double c = 1.0 / std::sqrt(2.0 * h);
  return periodic_tridiag(n, 0.0, -c, c);
}

// Legendre flux matrix from the three-term recurrence of orthonormal
// Legendre polynomials, independent of the library routine.
inline Matrix dense_legendre_flux(int n) {
  Matrix a = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double v = k / std::sqrt((2.0 * k - 1.0) * (2.0 * k + 1.0));
    a(k - 1, k) = v;
    a(k, k - 1) = v;
  }
  return a;
}

inline Matrix dense_abs(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  return eig.eigenvectors() * eig.eigenvalues().cwiseAbs().asDiagonal() *
         eig.eigenvectors().transpose();
}

// Stabilized slab transport -Dx u A^T + Dxx u |A|^T from dense matrices.
inline Matrix dense_transport(const Matrix& u, double h, const Matrix& a) {
  const int n = int(u.rows());
  return -dense_dx(n, h) * u * a.transpose() + dense_dxx(n, h) * u * dense_abs(a).transpose();
}

// One coupled-implicit step of the full slab system, assembled as a single
// (n N + n) linear system and solved by LU.
inline std::pair<Matrix, Vector> dense_full_step(const Matrix& u0, const Vector& B0, double h,
                                                 const Matrix& a, double sigma, double dt,
                                                 const Vector* source = nullptr) {
  const Eigen::Index n = u0.rows(), m = u0.cols(), nu = n * m;
  Matrix rhs_u = u0 + dt * dense_transport(u0, h, a);
  if (source) rhs_u.col(0) += dt * (*source);
  Matrix sys = Matrix::Zero(nu + n, nu + n);
  Vector rhs(nu + n);
  const double s = sigma * dt;
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index row = j + n * k;
      sys(row, row) = 1.0 + s;
      if (k == 0) sys(row, nu + j) = -s;
      rhs(row) = rhs_u(j, k);
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    sys(nu + j, j) = -s;
    sys(nu + j, nu + j) = 1.0 + s;
    rhs(nu + j) = B0(j);
  }
  const Vector z = sys.partialPivLu().solve(rhs);
  Matrix u1(n, m);
  for (Eigen::Index k = 0; k < m; ++k) u1.col(k) = z.segment(n * k, n);
  return {u1, z.tail(n)};
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("sodlr_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace sodlr::testing
