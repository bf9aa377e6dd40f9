// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include "sodlr/dlra.hpp"

#include <sstream>
#include <stdexcept>

#include "sodlr/errors.hpp"
#include "sodlr/full_solver.hpp"

namespace sodlr {

void check_time_step(double dt, const Discretization& disc, bool allow_large_dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const double dx = disc.mesh().min_dx();
  if (dt > dx * (1.0 + 1e-12) && !allow_large_dt) {
    std::ostringstream msg;
    msg << "time step " << dt << " exceeds the cell width " << dx
        << "; energy stability requires dt <= dx";
    throw std::invalid_argument(msg.str());
  }
}

BasisDerivatives basis_derivatives(const Discretization& disc, const Matrix& X) {
  BasisDerivatives d;
  const auto n_dir = disc.directions().size();
  d.dx.reserve(n_dir);
  d.dxx.reserve(n_dir);
  for (std::size_t k = 0; k < n_dir; ++k) {
    d.dx.push_back(disc.apply_dx(int(k), X));
    d.dxx.push_back(disc.apply_dxx(int(k), X));
  }
  return d;
}

namespace {

const BasisDerivatives& derivatives_or(const BasisDerivatives* given, BasisDerivatives& local,
                                       const Discretization& disc, const Matrix& X) {
  if (given && given->dx.size() == disc.directions().size()) {
    for (std::size_t d = 0; d < given->dx.size(); ++d)
      if (given->dx[d].cols() != X.cols() || given->dxx[d].cols() != X.cols())
        throw std::invalid_argument("basis derivatives do not match the basis");
    return *given;
  }
  local = basis_derivatives(disc, X);
  return local;
}

/// Number of leading rows of s that are not identically zero.
Eigen::Index leading_nonzero_rows(const Matrix& s) {
  Eigen::Index rho = s.rows();
  while (rho > 0 && (s.row(rho - 1).array() == 0.0).all()) --rho;
  return rho;
}

}  // namespace

Matrix k_step(const LowRankState& state, const Discretization& disc, double dt,
              const BasisDerivatives* dX0) {
  BasisDerivatives local;
  const BasisDerivatives& dx = derivatives_or(dX0, local, disc, state.X);
  Matrix k = state.X * state.S;
  for (std::size_t d = 0; d < disc.directions().size(); ++d) {
    const auto& flux = disc.directions()[d].flux;
    const Matrix va = state.V.transpose() * flux.A * state.V;
    const Matrix vabs = state.V.transpose() * flux.A_abs * state.V;
    k.noalias() -= dt * dx.dx[d] * (state.S * va.transpose());
    k.noalias() += dt * dx.dxx[d] * (state.S * vabs.transpose());
  }
  return k;
}

Matrix l_step(const LowRankState& state, const Discretization& disc, double dt,
              const BasisDerivatives* dX0) {
  BasisDerivatives local;
  const BasisDerivatives& dx = derivatives_or(dX0, local, disc, state.X);
  const Matrix l0 = state.V * state.S.transpose();
  Matrix l = l0;
  for (std::size_t d = 0; d < disc.directions().size(); ++d) {
    const auto& flux = disc.directions()[d].flux;
    const Matrix xdx = state.X.transpose() * dx.dx[d];
    const Matrix xdxx = state.X.transpose() * dx.dxx[d];
    l.noalias() -= dt * flux.A * (l0 * xdx.transpose());
    l.noalias() += dt * flux.A_abs * (l0 * xdxx.transpose());
  }
  return l;
}

AugmentedBasis augment_and_project(const Matrix& k_star, const Matrix& l_star,
                                   const LowRankState& state) {
  AugmentedBasis aug;
  aug.X = extend_orthonormal(state.X, k_star);
  aug.V = extend_orthonormal(state.V, l_star);
  // The old bases are the leading blocks, so the projection is a zero padding.
  aug.S_tilde = Matrix::Zero(aug.X.cols(), aug.V.cols());
  aug.S_tilde.topLeftCorner(state.S.rows(), state.S.cols()) = state.S;
  return aug;
}

Matrix s_step(const Matrix& X, const Matrix& V, const Matrix& S_tilde, const Discretization& disc,
              double dt, const BasisDerivatives* lead) {
  if (S_tilde.rows() != X.cols() || S_tilde.cols() != V.cols())
    throw std::invalid_argument("s_step: inconsistent factor shapes");
  const Eigen::Index rho = leading_nonzero_rows(S_tilde);
  Matrix s = S_tilde;
  if (rho == 0) return s;
  const bool use_lead = lead && lead->dx.size() == disc.directions().size() &&
                        lead->dx[0].cols() >= rho && lead->dx[0].rows() == X.rows();
  const Matrix s_lead = S_tilde.topRows(rho);
  for (std::size_t d = 0; d < disc.directions().size(); ++d) {
    const auto& flux = disc.directions()[d].flux;
    Matrix xdx, xdxx;
    if (use_lead) {
      xdx.noalias() = X.transpose() * lead->dx[d].leftCols(rho);
      xdxx.noalias() = X.transpose() * lead->dxx[d].leftCols(rho);
    } else {
      xdx.noalias() = X.transpose() * disc.apply_dx(int(d), X.leftCols(rho));
      xdxx.noalias() = X.transpose() * disc.apply_dxx(int(d), X.leftCols(rho));
    }
    const Matrix va = V.transpose() * flux.A * V;
    const Matrix vabs = V.transpose() * flux.A_abs * V;
    s.noalias() -= dt * xdx * (s_lead * va.transpose());
    s.noalias() += dt * xdxx * (s_lead * vabs.transpose());
  }
  return s;
}

ZerothUpdate coupled_zeroth_update(const LowRankState& state, const Vector& B0,
                                   const AugmentedBasis& aug, const Discretization& disc,
                                   double sigma, double dt, const Vector* source) {
  if (B0.size() != state.X.rows())
    throw std::invalid_argument("coupled_zeroth_update: B has wrong length");
  if (sigma < 0.0) throw std::invalid_argument("coupled_zeroth_update: negative opacity");
  Vector c = state.zeroth_moment() + dt * disc.apply_zeroth(aug.X, aug.S_tilde, aug.V);
  if (source) {
    if (source->size() != c.size())
      throw std::invalid_argument("coupled_zeroth_update: source has wrong length");
    c += dt * (*source);
  }
  ZerothUpdate out;
  out.u0.resize(c.size());
  out.B.resize(c.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    const CoupledCell cell = solve_coupled_cell(c(j), B0(j), sigma, dt);
    out.u0(j) = cell.u;
    out.B(j) = cell.B;
  }
  return out;
}

AbsorbedFactors absorption_update(const Matrix& S_star, const Matrix& V_star, double sigma,
                                  double dt) {
  Matrix l = V_star * S_star.transpose();
  if (l.rows() > 1) l.bottomRows(l.rows() - 1) /= (1.0 + sigma * dt);
  const ThinQR qr = thin_qr(l);
  return {qr.Q, qr.R.transpose()};
}

CorrectedFactors flux_augment_and_correct(const Vector& u0, const Matrix& X_star,
                                          const AbsorbedFactors& absorbed) {
  const Eigen::Index m = absorbed.V.rows();
  const Eigen::Index kx = X_star.cols();
  Vector e1 = Vector::Zero(m);
  e1(0) = 1.0;

  CorrectedFactors out;
  out.V = orthonormal_basis(hcat(e1, absorbed.V));
  // V_scat^T (I - e1 e1^T) V_tilde, without forming the projector
  const Matrix v_proj =
      absorbed.V.transpose() * out.V - absorbed.V.row(0).transpose() * out.V.row(0);
  const Matrix s_scat = absorbed.S * v_proj;

  const double u0_norm = u0.norm();
  if (!(u0_norm > 0.0)) {
    out.X = X_star;
    out.S = s_scat;
    return out;
  }

  // Basis of span[u0, X*] whose first column is exactly u0 / |u0|. Reusing
  // X* with u0 appended last would let the rounding defect of every column
  // act on u0 and bias the mass step after step. Instead extend X* by the
  // residual of u0 and rotate with a Householder reflector H (in those
  // coordinates) that maps e_1 onto the coordinates of u0 / |u0|.
  const Vector q0 = u0 / u0_norm;
  const Matrix y = extend_orthonormal(X_star, q0, 0.0);
  const Eigen::Index k = y.cols();
  Vector b = y.transpose() * q0;
  b /= b.norm();
  // Stable reflector: v = b + sign(b_0) e_1 gives H e_1 = -sign(b_0) b, and
  // flipping the sign of the first column restores +b.
  const double sgn = b(0) >= 0.0 ? 1.0 : -1.0;
  Vector v = b;
  v(0) += sgn;
  const double vv = v.squaredNorm();

  out.X = y;
  out.X.noalias() -= (2.0 / vv) * (y * v) * v.transpose();
  Matrix xt_xstar = Matrix::Identity(k, kx);  // X_tilde^T X* = D H [I; 0]
  xt_xstar.noalias() -= (2.0 / vv) * v * v.head(kx).transpose();
  xt_xstar.row(0) *= -sgn;
  out.X.col(0) = q0;

  out.S = (out.X.transpose() * u0) * out.V.row(0);
  out.S.noalias() += xt_xstar * s_scat;
  return out;
}

DlraStepResult dlra_step(const LowRankState& state, const Vector& B, const Discretization& disc,
                         const DlraStepConfig& cfg, DlraWorkspace* workspace) {
  check_time_step(cfg.dt, disc, cfg.allow_large_dt);
  if (state.X.rows() != disc.n_cells() || state.V.rows() != disc.n_moments())
    throw std::invalid_argument("dlra_step: state dimensions do not match the discretization");

  DlraWorkspace local;
  DlraWorkspace& ws = workspace ? *workspace : local;

  ws.derivatives = basis_derivatives(disc, state.X);
  ws.K_star = k_step(state, disc, cfg.dt, &ws.derivatives);
  ws.L_star = l_step(state, disc, cfg.dt, &ws.derivatives);
  ws.augmented = augment_and_project(ws.K_star, ws.L_star, state);
  ws.S_star = s_step(ws.augmented.X, ws.augmented.V, ws.augmented.S_tilde, disc, cfg.dt,
                     &ws.derivatives);
  ws.zeroth = coupled_zeroth_update(state, B, ws.augmented, disc, cfg.sigma, cfg.dt, cfg.source);
  ws.absorbed = absorption_update(ws.S_star, ws.augmented.V, cfg.sigma, cfg.dt);
  ws.corrected = flux_augment_and_correct(ws.zeroth.u0, ws.augmented.X, ws.absorbed);

  DlraStepResult out;
  const auto& c = ws.corrected;
  out.state = cfg.strategy == TruncationStrategy::conservative
                  ? truncate_conservative(c.X, c.S, c.V, cfg.truncation)
                  : truncate_standard(c.X, c.S, c.V, cfg.truncation);
  out.state.t = state.t + cfg.dt;
  out.B = ws.zeroth.B;
  if (!all_finite(out.state.S) || !all_finite(out.state.X) || !all_finite(out.state.V) ||
      !out.B.allFinite())
    throw NumericalBlowup("dlra_step: non-finite values in state");
  return out;
}

}  // namespace sodlr
