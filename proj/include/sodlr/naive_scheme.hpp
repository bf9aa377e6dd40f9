// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sodlr/linalg.hpp"
#include "sodlr/low_rank.hpp"
#include "sodlr/transport.hpp"
#include "sodlr/truncation.hpp"

namespace sodlr {

/// Naive IMEX BUG step: explicit transport and explicit B source in the
/// K/L/S steps with implicit self-absorption, followed by an implicit B update
/// using the new zeroth moment and standard truncation. Not energy stable.
struct NaiveStepResult {
  LowRankState state;
  Vector B;
  /// Augmented (untruncated) factors of the new solution.
  Matrix X_hat;
  Matrix S_hat;
  Matrix V_hat;
};

NaiveStepResult naive_step(const LowRankState& state, const Vector& B, const Discretization& disc,
                           double sigma, double dt, const TruncationConfig& truncation);

/// Spatially constant data for which one naive step increases the energy.
/// Requires 0 < alpha < sigma dt u1 / (1 + sigma dt + sigma^2 dt^2 + sigma^3 dt^3 / 2).
struct CounterexampleSpec {
  double sigma = 1.0;
  double dt = 1.0;
  double u1 = 1.0;
  double alpha = 0.2;

  double alpha_bound() const;
};

struct Counterexample {
  Discretization disc;
  LowRankState state;  // rank 2: constant spatial mode x {e_1, e_2}, second singular value 0
  Vector B0;
};

/// Initial data B0 = u1 + alpha (1 + sigma dt), u0 = (u1 - sigma dt alpha (1 + sigma dt)) e_1
/// on a periodic slab of n_x cells with dx = dt. Throws std::invalid_argument
/// if alpha lies outside its admissible interval.
Counterexample build_counterexample(const CounterexampleSpec& spec, int n_x, int n_moments);

}  // namespace sodlr
