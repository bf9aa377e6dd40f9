// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "sodlr/config.hpp"
#include "sodlr/full_solver.hpp"
#include "sodlr/linalg.hpp"
#include "sodlr/low_rank.hpp"
#include "sodlr/transport.hpp"

namespace sodlr {

/// Discretized problem. The initial moment matrix is stored in factored form
/// u0 = ic_X * ic_V^T so large 2D problems never densify it.
struct ProblemSetup {
  Discretization disc;
  Matrix ic_X;
  Matrix ic_V;
  Vector B0;
  Vector source;  // per-cell Q; empty when the problem has none
  double sigma = 1.0;
  double a_rad = 1.0;
  std::vector<std::string> warnings;

  const Vector* source_ptr() const { return source.size() ? &source : nullptr; }
  Matrix initial_moments() const { return ic_X * ic_V.transpose(); }
  FullState initial_full_state() const { return {initial_moments(), B0, 0.0}; }
  LowRankState initial_low_rank(int r) const { return low_rank_from_factors(ic_X, ic_V, r); }
};

/// Cutoff Gaussian pulse max(1e-4, exp(-(x-1)^2 / (2 s^2)) / sqrt(2 pi s^2)).
double plane_source_profile(double x, double sigma_ic);

/// Fraction of [a, b] covered by [-h, h].
double overlap_fraction(double a, double b, double h);

ProblemSetup plane_source_setup(const RunConfig& cfg);
ProblemSetup su_olson_setup(const RunConfig& cfg);
ProblemSetup beam_2d_setup(const RunConfig& cfg);
ProblemSetup build_problem(const RunConfig& cfg);

/// Projection of the angular beam profile onto the real spherical harmonics
/// up to degree n_pn. Also reports the fraction of the profile's L2 energy
/// that the truncated expansion misses.
struct AngularProjection {
  Vector coefficients;
  double energy_loss = 0.0;
};
AngularProjection project_angular_beam(int n_pn, double sigma_omega);

/// Spatial beam profile 1e6 / (2 pi s^2) exp(-|x|^2 / (2 s^2)).
double beam_spatial_profile(double x1, double x2, double sigma_x);

}  // namespace sodlr
