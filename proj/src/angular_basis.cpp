// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include "sodlr/angular_basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sodlr/errors.hpp"

namespace sodlr {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on the unnormalized P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (n == 1) ? x : p1;
      const double pnm1 = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double pn = (n == 1) ? x : p1;
    const double pnm1 = (n == 1) ? 1.0 : p0;
    dp = n * (x * pn - pnm1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

std::vector<double> legendre_all(int n_max, double mu) {
  std::vector<double> p(n_max + 1);
  // Normalized recurrence: P_{n+1} = (a_n mu P_n - b_n P_{n-1}).
  p[0] = 1.0 / std::sqrt(2.0);
  if (n_max >= 1) p[1] = std::sqrt(1.5) * mu;
  for (int n = 1; n < n_max; ++n) {
    const double a = std::sqrt((2.0 * n + 1.0) * (2.0 * n + 3.0)) / (n + 1.0);
    const double b = n / (n + 1.0) * std::sqrt((2.0 * n + 3.0) / (2.0 * n - 1.0));
    p[n + 1] = a * mu * p[n] - b * p[n - 1];
  }
  return p;
}

double legendre_eval(int n, double mu) {
  if (n < 0) throw std::invalid_argument("legendre_eval: negative degree " + std::to_string(n));
  if (!(mu >= -1.0 && mu <= 1.0))
    throw std::invalid_argument("legendre_eval: mu outside [-1, 1]");
  return legendre_all(n, mu)[n];
}

FluxMatrices build_flux_matrix(int n_moments) {
  if (n_moments < 1) throw std::invalid_argument("build_flux_matrix: need at least one moment");
  FluxMatrices f;
  f.n_moments = n_moments;
  f.A = Matrix::Zero(n_moments, n_moments);
  for (int n = 0; n + 1 < n_moments; ++n) {
    const double a = (n + 1.0) / std::sqrt((2.0 * n + 1.0) * (2.0 * n + 3.0));
    f.A(n, n + 1) = a;
    f.A(n + 1, n) = a;
  }
  return f;
}

std::pair<Matrix, Matrix> abs_flux_matrix(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("abs_flux_matrix: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  if (eig.info() != Eigen::Success)
    throw NumericalError("abs_flux_matrix: eigendecomposition of " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " matrix did not converge");
  const Matrix& q = eig.eigenvectors();
  const Vector lam = eig.eigenvalues().cwiseAbs();
  Matrix abs = q * lam.asDiagonal() * q.transpose();
  Matrix sqrt_abs = q * lam.cwiseSqrt().asDiagonal() * q.transpose();
  // Symmetrize away rounding.
  abs = 0.5 * (abs + abs.transpose()).eval();
  sqrt_abs = 0.5 * (sqrt_abs + sqrt_abs.transpose()).eval();
  return {abs, sqrt_abs};
}

FluxMatrices legendre_flux_matrices(int n_moments) {
  FluxMatrices f = build_flux_matrix(n_moments);
  auto [abs, sqrt_abs] = abs_flux_matrix(f.A);
  f.A_abs = std::move(abs);
  f.A_abs_sqrt = std::move(sqrt_abs);
  return f;
}

int sph_index(int l, int m) { return l * l + l + m; }

namespace {

// Normalized associated Legendre functions without Condon-Shortley phase,
// Pbar_l^m(mu) = N_lm P_l^m(mu) with N_lm = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!),
// returned in a (n_pn+1) x (n_pn+1) table indexed [l][m].
std::vector<std::vector<double>> normalized_assoc_legendre(int n_pn, double mu) {
  std::vector<std::vector<double>> p(n_pn + 1, std::vector<double>(n_pn + 1, 0.0));
  const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
  p[0][0] = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  for (int m = 1; m <= n_pn; ++m)
    p[m][m] = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * p[m - 1][m - 1];
  for (int m = 0; m < n_pn; ++m) p[m + 1][m] = std::sqrt(2.0 * m + 3.0) * mu * p[m][m];
  for (int m = 0; m <= n_pn; ++m) {
    for (int l = m + 2; l <= n_pn; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - double(m) * m) /
                                 (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      p[l][m] = a * (mu * p[l - 1][m] - b * p[l - 2][m]);
    }
  }
  return p;
}

}  // namespace

std::vector<double> real_sph_harmonics(int n_pn, double mu, double phi) {
  if (n_pn < 0) throw std::invalid_argument("real_sph_harmonics: negative degree");
  const auto p = normalized_assoc_legendre(n_pn, mu);
  std::vector<double> y((n_pn + 1) * (n_pn + 1));
  for (int l = 0; l <= n_pn; ++l) {
    y[sph_index(l, 0)] = p[l][0];
    for (int m = 1; m <= l; ++m) {
      y[sph_index(l, m)] = std::numbers::sqrt2 * p[l][m] * std::cos(m * phi);
      y[sph_index(l, -m)] = std::numbers::sqrt2 * p[l][m] * std::sin(m * phi);
    }
  }
  return y;
}

SphereQuadrature sphere_quadrature(int n_mu, int n_phi) {
  if (n_mu < 1 || n_phi < 1) throw std::invalid_argument("sphere_quadrature: empty rule");
  const GaussRule g = gauss_legendre(n_mu);
  SphereQuadrature q;
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  q.mu.reserve(std::size_t(n_mu) * n_phi);
  for (int i = 0; i < n_mu; ++i) {
    for (int j = 0; j < n_phi; ++j) {
      q.mu.push_back(g.nodes[i]);
      q.phi.push_back((j + 0.5) * dphi);
      q.weight.push_back(g.weights[i] * dphi);
    }
  }
  return q;
}

Matrix sph_harmonics_at(int n_pn, const SphereQuadrature& quad) {
  const int n_mom = (n_pn + 1) * (n_pn + 1);
  Matrix y(quad.mu.size(), n_mom);
  for (std::size_t q = 0; q < quad.mu.size(); ++q) {
    const auto row = real_sph_harmonics(n_pn, quad.mu[q], quad.phi[q]);
    for (int k = 0; k < n_mom; ++k) y(q, k) = row[k];
  }
  return y;
}

std::pair<FluxMatrices, FluxMatrices> build_pn_flux_matrices_2d(int n_pn) {
  if (n_pn < 1) throw std::invalid_argument("build_pn_flux_matrices_2d: n_pn must be >= 1");
  // Integrands Y_a Omega_i Y_b are polynomials of degree <= 2 n_pn + 1, so
  // n_pn + 2 Gauss nodes and 2 n_pn + 4 azimuthal points integrate exactly.
  const SphereQuadrature quad = sphere_quadrature(n_pn + 2, 2 * n_pn + 4);
  const Matrix y = sph_harmonics_at(n_pn, quad);
  const Eigen::Index nq = y.rows();
  Vector w1(nq), w3(nq);
  for (Eigen::Index q = 0; q < nq; ++q) {
    const double s = std::sqrt(std::max(0.0, 1.0 - quad.mu[q] * quad.mu[q]));
    w1(q) = quad.weight[q] * s * std::cos(quad.phi[q]);
    w3(q) = quad.weight[q] * quad.mu[q];
  }
  auto assemble = [&](const Vector& w) {
    FluxMatrices f;
    f.n_moments = int(y.cols());
    f.A = y.transpose() * w.asDiagonal() * y;
    f.A = 0.5 * (f.A + f.A.transpose()).eval();
    f.A = f.A.unaryExpr([](double v) { return std::abs(v) < 1e-15 ? 0.0 : v; });
    auto [abs, sqrt_abs] = abs_flux_matrix(f.A);
    f.A_abs = std::move(abs);
    f.A_abs_sqrt = std::move(sqrt_abs);
    return f;
  };
  return {assemble(w1), assemble(w3)};
}

}  // namespace sodlr
