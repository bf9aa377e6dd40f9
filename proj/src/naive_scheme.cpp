// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include "sodlr/naive_scheme.hpp"

#include <cmath>
#include <stdexcept>

#include "sodlr/dlra.hpp"
#include "sodlr/errors.hpp"

namespace sodlr {

NaiveStepResult naive_step(const LowRankState& state, const Vector& B, const Discretization& disc,
                           double sigma, double dt, const TruncationConfig& truncation) {
  if (!(dt > 0.0)) throw std::invalid_argument("naive_step: dt must be positive");
  if (B.size() != state.X.rows()) throw std::invalid_argument("naive_step: B has wrong length");
  const double damp = 1.0 / (1.0 + sigma * dt);

  Matrix k1 = k_step(state, disc, dt);
  k1.noalias() += sigma * dt * B * state.V.row(0);
  k1 *= damp;

  Matrix l1 = l_step(state, disc, dt);
  l1.row(0) += sigma * dt * (state.X.transpose() * B).transpose();
  l1 *= damp;

  const AugmentedBasis aug = augment_and_project(k1, l1, state);
  Matrix s1 = s_step(aug.X, aug.V, aug.S_tilde, disc, dt);
  s1.noalias() += sigma * dt * (aug.X.transpose() * B) * aug.V.row(0);
  s1 *= damp;

  const Vector u0 = aug.X * (s1 * aug.V.row(0).transpose());
  NaiveStepResult out;
  out.B = (B + sigma * dt * u0) * damp;
  out.X_hat = aug.X;
  out.S_hat = s1;
  out.V_hat = aug.V;
  out.state = truncate_standard(aug.X, s1, aug.V, truncation);
  out.state.t = state.t + dt;
  if (!all_finite(out.state.S) || !out.B.allFinite())
    throw NumericalBlowup("naive_step: non-finite values in state");
  return out;
}

double CounterexampleSpec::alpha_bound() const {
  const double s = sigma * dt;
  return s * u1 / (1.0 + s + s * s + 0.5 * s * s * s);
}

Counterexample build_counterexample(const CounterexampleSpec& spec, int n_x, int n_moments) {
  if (!(spec.sigma > 0.0 && spec.dt > 0.0 && spec.u1 > 0.0))
    throw std::invalid_argument("build_counterexample: sigma, dt and u1 must be positive");
  if (!(spec.alpha > 0.0 && spec.alpha < spec.alpha_bound()))
    throw std::invalid_argument("build_counterexample: alpha outside (0, " +
                                std::to_string(spec.alpha_bound()) + ")");
  if (n_moments < 2) throw std::invalid_argument("build_counterexample: need at least 2 moments");

  const double s = spec.sigma * spec.dt;
  const double b0 = spec.u1 + spec.alpha * (1.0 + s);
  const double u0 = spec.u1 - s * spec.alpha * (1.0 + s);

  const Grid1D grid(n_x, 0.0, n_x * spec.dt);
  Counterexample ce{Discretization::slab(grid, legendre_flux_matrices(n_moments)), {}, {}};

  const Matrix constant = Matrix::Constant(n_x, 1, 1.0 / std::sqrt(double(n_x)));
  ce.state.X = complete_basis(constant, 2);
  ce.state.V = Matrix::Identity(n_moments, 2);
  ce.state.S = Matrix::Zero(2, 2);
  ce.state.S(0, 0) = u0 * std::sqrt(double(n_x));
  ce.B0 = Vector::Constant(n_x, b0);
  return ce;
}

}  // namespace sodlr
