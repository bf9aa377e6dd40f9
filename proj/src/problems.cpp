// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include "sodlr/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sodlr/angular_basis.hpp"
#include "sodlr/errors.hpp"

namespace sodlr {

namespace {

constexpr double kPulseCenter = 1.0;
constexpr double kSlabHalfWidth = 10.0;
constexpr double kSourceHalfWidth = 0.5;
constexpr double kBeamDirection = 0.70710678118654752440;  // 1/sqrt(2)

void check_problem(const RunConfig& cfg, Problem expected) {
  if (cfg.problem != expected)
    throw ConfigError("problem setup called for " + to_string(expected) + " with a " +
                      to_string(cfg.problem) + " config");
  validate(cfg);
}

ProblemSetup slab_setup(const RunConfig& cfg) {
  const Grid1D grid(cfg.n_x, -kSlabHalfWidth, kSlabHalfWidth);
  ProblemSetup p{Discretization::slab(grid, legendre_flux_matrices(cfg.n_moments)), {}, {}, {}, {},
                 cfg.sigma, cfg.a_rad, {}};
  p.ic_X.resize(cfg.n_x, 1);
  for (int j = 0; j < cfg.n_x; ++j) p.ic_X(j, 0) = plane_source_profile(grid.center(j), cfg.sigma_ic);
  p.ic_V = Matrix::Zero(cfg.n_moments, 1);
  p.ic_V(0, 0) = 1.0;
  p.B0 = Vector::Constant(cfg.n_x, cfg.b0);
  if (cfg.t_end > kSlabHalfWidth - kPulseCenter) {
    std::ostringstream w;
    w << "t_end = " << cfg.t_end << " lets the wave reach the periodic boundary at x = "
      << kSlabHalfWidth;
    p.warnings.push_back(w.str());
  }
  return p;
}

}  // namespace

double plane_source_profile(double x, double sigma_ic) {
  const double s2 = sigma_ic * sigma_ic;
  const double d = x - kPulseCenter;
  return std::max(1e-4, std::exp(-d * d / (2.0 * s2)) / std::sqrt(2.0 * std::numbers::pi * s2));
}

double overlap_fraction(double a, double b, double h) {
  if (!(b > a)) throw std::invalid_argument("overlap_fraction: empty interval");
  const double lo = std::max(a, -h);
  const double hi = std::min(b, h);
  return std::max(0.0, hi - lo) / (b - a);
}

ProblemSetup plane_source_setup(const RunConfig& cfg) {
  check_problem(cfg, Problem::plane_source);
  return slab_setup(cfg);
}

ProblemSetup su_olson_setup(const RunConfig& cfg) {
  check_problem(cfg, Problem::su_olson);
  ProblemSetup p = slab_setup(cfg);
  const Grid1D& grid = p.disc.mesh().axis(0);
  p.source.resize(cfg.n_x);
  for (int j = 0; j < cfg.n_x; ++j) {
    const double c = grid.center(j);
    const double h = 0.5 * grid.dx();
    p.source(j) = overlap_fraction(c - h, c + h, kSourceHalfWidth) / cfg.a_rad;
  }
  return p;
}

double beam_spatial_profile(double x1, double x2, double sigma_x) {
  const double s2 = sigma_x * sigma_x;
  return 1e6 / (2.0 * std::numbers::pi * s2) * std::exp(-(x1 * x1 + x2 * x2) / (2.0 * s2));
}

AngularProjection project_angular_beam(int n_pn, double sigma_omega) {
  // The profile has width sigma_omega; resolve it with a few dozen nodes per width.
  const int n_mu = std::max(2 * n_pn + 2, int(std::ceil(40.0 / sigma_omega)));
  const int n_phi = 2 * n_mu;
  const SphereQuadrature quad = sphere_quadrature(n_mu, n_phi);
  const double s2 = sigma_omega * sigma_omega;
  const double norm = 1.0 / (2.0 * std::numbers::pi * s2);

  // Accumulate point by point: a dense harmonics table would not fit at high degree.
  Vector coeffs = Vector::Zero((n_pn + 1) * (n_pn + 1));
  double g_energy = 0.0;
  for (std::size_t q = 0; q < quad.mu.size(); ++q) {
    const double o1 = std::sqrt(std::max(0.0, 1.0 - quad.mu[q] * quad.mu[q])) * std::cos(quad.phi[q]);
    const double o3 = quad.mu[q];
    const double d1 = o1 - kBeamDirection;
    const double d3 = o3 - kBeamDirection;
    const double arg = (d1 * d1 + d3 * d3) / (2.0 * s2);
    if (arg > 700.0) continue;
    const double v = norm * std::exp(-arg);
    const std::vector<double> y = real_sph_harmonics(n_pn, quad.mu[q], quad.phi[q]);
    for (std::size_t k = 0; k < y.size(); ++k) coeffs(Eigen::Index(k)) += quad.weight[q] * v * y[k];
    g_energy += quad.weight[q] * v * v;
  }
  AngularProjection out;
  out.coefficients = coeffs;
  out.energy_loss = g_energy > 0.0 ? 1.0 - out.coefficients.squaredNorm() / g_energy : 0.0;
  return out;
}

ProblemSetup beam_2d_setup(const RunConfig& cfg) {
  check_problem(cfg, Problem::beam_2d);
  const Grid1D g1(cfg.n_x, -1.0, 1.0);
  const Grid1D g2(cfg.n_y, -1.0, 1.0);
  auto [flux1, flux3] = build_pn_flux_matrices_2d(cfg.n_pn);
  std::vector<StreamingDirection> dirs;
  dirs.push_back({0, build_stencils(g1), std::move(flux1)});
  dirs.push_back({1, build_stencils(g2), std::move(flux3)});
  ProblemSetup p{Discretization(Mesh({g1, g2}), std::move(dirs)), {}, {}, {}, {}, cfg.sigma,
                 cfg.a_rad, {}};

  const int n = cfg.n_x * cfg.n_y;
  p.ic_X.resize(n, 1);
  for (int i1 = 0; i1 < cfg.n_y; ++i1)
    for (int i0 = 0; i0 < cfg.n_x; ++i0)
      p.ic_X(i0 + cfg.n_x * i1, 0) = beam_spatial_profile(g1.center(i0), g2.center(i1), cfg.sigma_x);

  const AngularProjection proj = project_angular_beam(cfg.n_pn, cfg.sigma_omega);
  p.ic_V = proj.coefficients;
  if (proj.energy_loss > 0.05) {
    std::ostringstream w;
    w << "n_pn = " << cfg.n_pn << " misses " << 100.0 * proj.energy_loss
      << "% of the angular beam energy (sigma_omega = " << cfg.sigma_omega << ")";
    p.warnings.push_back(w.str());
  }
  p.B0 = Vector::Constant(n, cfg.b0);
  return p;
}

ProblemSetup build_problem(const RunConfig& cfg) {
  switch (cfg.problem) {
    case Problem::plane_source: return plane_source_setup(cfg);
    case Problem::su_olson: return su_olson_setup(cfg);
    case Problem::beam_2d: return beam_2d_setup(cfg);
  }
  throw ConfigError("unknown problem");
}

}  // namespace sodlr
