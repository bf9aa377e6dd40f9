// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "sodlr/linalg.hpp"
#include "sodlr/low_rank.hpp"
#include "sodlr/transport.hpp"

namespace sodlr {

/// 1/2 |u|_F^2 + 1/2 |B|^2.
double total_energy(const Matrix& u, const Vector& B);
/// Same, using orthonormality of X and V: 1/2 |S|_F^2 + 1/2 |B|^2.
double total_energy(const LowRankState& u, const Vector& B);

/// Cell volume times the sum over cells of (u_j0 + B_j).
double total_mass(const Matrix& u, const Vector& B, const Mesh& mesh);
double total_mass(const LowRankState& u, const Vector& B, const Mesh& mesh);

double relative_mass_error(double m0, double m);

/// Phi_j = u_j0 (zeroth coefficient convention).
Vector scalar_flux(const Matrix& u);
Vector scalar_flux(const LowRankState& u);

/// T = (B / a_rad)^(1/4). Negative B is floored at 0 with a warning on
/// stderr; the number of floored cells is returned through `floored`.
Vector temperature(const Vector& B, double a_rad, int* floored = nullptr);

struct HistoryRow {
  double t = 0.0;
  int rank = 0;
  double mass = 0.0;
  double energy = 0.0;
  double rel_mass_err = 0.0;
  double wall_s = 0.0;
};

class History {
 public:
  /// Appends a row; the first row fixes the reference mass. Throws
  /// std::logic_error if t does not increase.
  void record(double t, int rank, double mass, double energy, double wall_s);

  const std::vector<HistoryRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const HistoryRow& back() const { return rows_.back(); }
  double initial_mass() const { return m0_; }

 private:
  std::vector<HistoryRow> rows_;
  double m0_ = 0.0;
};

}  // namespace sodlr
