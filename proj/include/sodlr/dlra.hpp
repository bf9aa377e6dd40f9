// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "sodlr/linalg.hpp"
#include "sodlr/low_rank.hpp"
#include "sodlr/transport.hpp"
#include "sodlr/truncation.hpp"

namespace sodlr {

// Energy-stable, locally mass-conservative rank-adaptive BUG step for the
// Su-Olson system. One step runs
//
//   K/L transport -> augment [K*, X0], [L*, V0] -> Galerkin S transport
//   -> implicit (u_0, B) solve -> absorption of higher moments
//   -> augment with u_0 and e_1, correct S -> truncate.
//
// Transport is explicit in every sub-step; all opacity terms are implicit.

/// Stencils of every streaming direction applied to a spatial basis.
struct BasisDerivatives {
  std::vector<Matrix> dx;   // Dx_d X
  std::vector<Matrix> dxx;  // Dxx_d X
};
BasisDerivatives basis_derivatives(const Discretization& disc, const Matrix& X);

/// K* = K0 + dt F_V(K0) with K0 = X0 S0 and F_V the streaming operator
/// Galerkin-projected onto V0 (no opacity term). `dX0` optionally supplies
/// precomputed derivatives of X0.
Matrix k_step(const LowRankState& state, const Discretization& disc, double dt,
              const BasisDerivatives* dX0 = nullptr);

/// L* = L0 + dt F_X(L0) with L0 = V0 S0^T and the stencils projected onto X0.
Matrix l_step(const LowRankState& state, const Discretization& disc, double dt,
              const BasisDerivatives* dX0 = nullptr);

/// Augmented orthonormal bases and the old solution expressed in them.
struct AugmentedBasis {
  Matrix X;        // orthonormal basis of range [K*, X0]; X0 forms the leading columns
  Matrix V;        // orthonormal basis of range [L*, V0]; V0 forms the leading columns
  Matrix S_tilde;  // X^T X0 S0 V0^T V, so X S_tilde V^T == X0 S0 V0^T
};

AugmentedBasis augment_and_project(const Matrix& k_star, const Matrix& l_star,
                                   const LowRankState& state);

/// Galerkin transport update of the coefficients in the augmented bases.
/// Only the leading rows of S_tilde that are not identically zero enter the
/// stencil products; `lead` may supply derivatives of those leading columns of X.
Matrix s_step(const Matrix& X, const Matrix& V, const Matrix& S_tilde, const Discretization& disc,
              double dt, const BasisDerivatives* lead = nullptr);

struct ZerothUpdate {
  Vector u0;  // updated zeroth moment u_hat_0
  Vector B;   // updated internal energy
};

/// Implicit coupled update of the zeroth moment and B. The explicit part is
///   c = u0_old - dt (Dx u A^T)_0 + dt (Dxx u |A|^T)_0 (+ dt Q)
/// with u = X S_tilde V^T (which equals the old solution), u0_old the old
/// zeroth moment, followed by the closed-form per-cell 2x2 solve.
ZerothUpdate coupled_zeroth_update(const LowRankState& state, const Vector& B0,
                                   const AugmentedBasis& aug, const Discretization& disc,
                                   double sigma, double dt, const Vector* source = nullptr);

struct AbsorbedFactors {
  Matrix V;  // orthonormal
  Matrix S;  // V S^T == scaled L
};

/// Scales the rows m != 0 of L = V S^T by 1 / (1 + sigma dt) and refactors
/// L = V_scat S_scat^T by QR.
AbsorbedFactors absorption_update(const Matrix& S_star, const Matrix& V_star, double sigma,
                                  double dt);

struct CorrectedFactors {
  Matrix X;  // orthonormal basis of [u0, X*]
  Matrix S;
  Matrix V;  // orthonormal basis of [e_1, V_scat]; first column is e_1
};

/// Replaces the zeroth-moment column of X* S_scat V_scat^T by u0.
CorrectedFactors flux_augment_and_correct(const Vector& u0, const Matrix& X_star,
                                          const AbsorbedFactors& absorbed);

struct DlraStepConfig {
  double sigma = 1.0;
  double dt = 0.0;
  const Vector* source = nullptr;
  TruncationConfig truncation;
  TruncationStrategy strategy = TruncationStrategy::conservative;
  /// Permit dt > dx (outside the proven energy-stable regime).
  bool allow_large_dt = false;
};

/// Intermediate quantities of one step, for inspection and tests.
struct DlraWorkspace {
  BasisDerivatives derivatives;
  Matrix K_star;
  Matrix L_star;
  AugmentedBasis augmented;
  Matrix S_star;
  ZerothUpdate zeroth;
  AbsorbedFactors absorbed;
  CorrectedFactors corrected;
};

struct DlraStepResult {
  LowRankState state;
  Vector B;
};

/// Full step. Throws std::invalid_argument if dt exceeds the smallest cell
/// width without `allow_large_dt`, RankOverflow from truncation and
/// NumericalBlowup on non-finite factors.
DlraStepResult dlra_step(const LowRankState& state, const Vector& B, const Discretization& disc,
                         const DlraStepConfig& cfg, DlraWorkspace* workspace = nullptr);

/// Energy-stable CFL guard shared by the low-rank solvers.
void check_time_step(double dt, const Discretization& disc, bool allow_large_dt);

}  // namespace sodlr
