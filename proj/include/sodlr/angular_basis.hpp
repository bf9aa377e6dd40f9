// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "sodlr/linalg.hpp"

namespace sodlr {

/// Streaming matrix of a moment basis together with its absolute value
/// splitting. For an eigendecomposition A = Q M Q^T, A_abs = Q |M| Q^T and
/// A_abs_sqrt = Q |M|^{1/2} Q^T. All three are symmetric.
struct FluxMatrices {
  int n_moments = 0;
  Matrix A;
  Matrix A_abs;
  Matrix A_abs_sqrt;
};

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

/// P_n(mu) of the Legendre family normalized so that
/// int_{-1}^{1} P_m P_n dmu = delta_mn. Throws std::invalid_argument for
/// n < 0 or mu outside [-1, 1].
double legendre_eval(int n, double mu);

/// All normalized Legendre values P_0..P_{n_max}(mu).
std::vector<double> legendre_all(int n_max, double mu);

/// 1D P_N streaming matrix A_mn = <P_m, mu P_n> from the three-term
/// recurrence; tridiagonal with zero diagonal. Only `A` is filled.
FluxMatrices build_flux_matrix(int n_moments);

/// Absolute value and its square root of a symmetric matrix, via
/// eigendecomposition. Throws NumericalError if the solver fails.
std::pair<Matrix, Matrix> abs_flux_matrix(const Matrix& a);

/// build_flux_matrix followed by abs_flux_matrix.
FluxMatrices legendre_flux_matrices(int n_moments);

// Real spherical harmonics
//
// Directions are parametrized as
//   Omega = (sqrt(1 - mu^2) cos(phi), sqrt(1 - mu^2) sin(phi), mu),
// i.e. the polar axis is Omega_3. The basis is orthonormal on S^2 with
// dOmega = dmu dphi:
//   Y_lm = N_lm P_l^|m|(mu) * { sqrt2 cos(m phi)   m > 0
//                               1                  m = 0
//                               sqrt2 sin(|m| phi) m < 0 }
// without the Condon-Shortley phase. Moments are ordered lexicographically
// in (l, m), l = 0..n_pn, m = -l..l, so index(l, m) = l*l + l + m and Y_00 is
// moment 0.

/// Moment index of (l, m).
int sph_index(int l, int m);

/// All (n_pn + 1)^2 real harmonics at a direction.
std::vector<double> real_sph_harmonics(int n_pn, double mu, double phi);

/// Product quadrature on S^2: Gauss in mu times uniform trapezoid in phi.
struct SphereQuadrature {
  std::vector<double> mu;
  std::vector<double> phi;
  std::vector<double> weight;  // full product weights, sum = 4 pi
};

SphereQuadrature sphere_quadrature(int n_mu, int n_phi);

/// Matrix Y (n_points x n_moments) of harmonics evaluated at quadrature points.
Matrix sph_harmonics_at(int n_pn, const SphereQuadrature& quad);

/// Streaming matrices for Omega_1 (first spatial axis) and Omega_3 (second
/// spatial axis), assembled by exact product quadrature.
std::pair<FluxMatrices, FluxMatrices> build_pn_flux_matrices_2d(int n_pn);

}  // namespace sodlr
