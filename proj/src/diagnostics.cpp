// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include "sodlr/diagnostics.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace sodlr {

double total_energy(const Matrix& u, const Vector& B) {
  return 0.5 * u.squaredNorm() + 0.5 * B.squaredNorm();
}

double total_energy(const LowRankState& u, const Vector& B) {
  return 0.5 * u.S.squaredNorm() + 0.5 * B.squaredNorm();
}

double total_mass(const Matrix& u, const Vector& B, const Mesh& mesh) {
  return mesh.cell_volume() * (u.col(0).sum() + B.sum());
}

double total_mass(const LowRankState& u, const Vector& B, const Mesh& mesh) {
  return mesh.cell_volume() * (u.zeroth_moment().sum() + B.sum());
}

double relative_mass_error(double m0, double m) {
  return m0 != 0.0 ? std::abs(m0 - m) / std::abs(m0) : std::abs(m);
}

Vector scalar_flux(const Matrix& u) { return u.col(0); }

Vector scalar_flux(const LowRankState& u) { return u.zeroth_moment(); }

Vector temperature(const Vector& B, double a_rad, int* floored) {
  if (!(a_rad > 0.0)) throw std::invalid_argument("temperature: a_rad must be positive");
  Vector t(B.size());
  int neg = 0;
  for (Eigen::Index j = 0; j < B.size(); ++j) {
    if (B(j) < 0.0) {
      ++neg;
      t(j) = 0.0;
    } else {
      t(j) = std::pow(B(j) / a_rad, 0.25);
    }
  }
  if (neg > 0) std::cerr << "warning: " << neg << " cells with negative B floored to T = 0\n";
  if (floored) *floored = neg;
  return t;
}

void History::record(double t, int rank, double mass, double energy, double wall_s) {
  if (!rows_.empty() && !(t > rows_.back().t))
    throw std::logic_error("History::record: time must increase strictly");
  if (rows_.empty()) m0_ = mass;
  rows_.push_back({t, rank, mass, energy, relative_mass_error(m0_, mass), wall_s});
}

}  // namespace sodlr
