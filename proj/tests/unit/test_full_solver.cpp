// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sodlr/diagnostics.hpp"
#include "sodlr/errors.hpp"
#include "sodlr/full_solver.hpp"
#include "support/test_support.hpp"

using namespace sodlr;
using Catch::Matchers::WithinAbs;

namespace {

struct Slab {
  Grid1D grid;
  Discretization disc;
  Slab(int n_x, int n_m, double len = 2.0)
      : grid(n_x, 0.0, len), disc(Discretization::slab(grid, legendre_flux_matrices(n_m))) {}
};

}  // namespace

TEST_CASE("coupled 2x2 cell solve", "[full]") {
  const CoupledCell c = solve_coupled_cell(2.0, 1.0, 1.0, 0.5);
  CHECK_THAT(c.u, WithinAbs(1.75, 1e-15));
  CHECK_THAT(c.B, WithinAbs(1.25, 1e-15));
  const CoupledCell z = solve_coupled_cell(2.0, 1.0, 0.0, 0.5);
  CHECK(z.u == 2.0);
  CHECK(z.B == 1.0);

  testing::Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = rng.uniform(-5, 5), b0 = rng.uniform(-5, 5);
    const double sigma = rng.uniform(0, 10), dt = rng.uniform(0, 2);
    const CoupledCell s = solve_coupled_cell(a, b0, sigma, dt);
    const double k = sigma * dt;
    const double scale = 1.0 + std::abs(a) + std::abs(b0) + std::abs(s.u) + std::abs(s.B);
    CHECK(std::abs((1 + k) * s.u - k * s.B - a) <= 1e-13 * scale * (1 + k));
    CHECK(std::abs(-k * s.u + (1 + k) * s.B - b0) <= 1e-13 * scale * (1 + k));
    CHECK(std::abs(s.u + s.B - (a + b0)) <= 1e-14 * scale);
  }
}

TEST_CASE("full_step without opacity is pure transport", "[full]") {
  testing::Rng rng(17);
  Slab s(12, 6);
  FullState st{rng.matrix(12, 6), rng.vector(12), 0.0};
  const double dt = 0.5 * s.grid.dx();
  const FullState nx = full_step(st, s.disc, 0.0, dt);
  const Matrix oracle =
      st.u + dt * testing::dense_transport(st.u, s.grid.dx(), testing::dense_legendre_flux(6));
  CHECK((nx.u - oracle).cwiseAbs().maxCoeff() <= 1e-14 * oracle.cwiseAbs().maxCoeff() * 10);
  CHECK(nx.B == st.B);
  CHECK(nx.t == dt);
}

TEST_CASE("constant equilibrium is a fixed point", "[full]") {
  Slab s(10, 5);
  FullState st;
  st.u = Matrix::Zero(10, 5);
  st.u.col(0).setConstant(1.7);
  st.B = Vector::Constant(10, 1.7);
  const FullState nx = full_step(st, s.disc, 3.0, 0.1);
  CHECK((nx.u - st.u).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((nx.B - st.B).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("full_step matches the monolithic linear-solve oracle", "[full]") {
  testing::Rng rng(19);
  Slab s(8, 4);
  FullState st{rng.matrix(8, 4), rng.vector(8), 0.0};
  const double sigma = 1.0, dt = 0.01;
  const FullState nx = full_step(st, s.disc, sigma, dt);
  auto [u1, b1] = testing::dense_full_step(st.u, st.B, s.grid.dx(), testing::dense_legendre_flux(4),
                                           sigma, dt);
  CHECK((nx.u - u1).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((nx.B - b1).cwiseAbs().maxCoeff() <= 1e-12);

  SECTION("with a source") {
    const Vector q = rng.vector(8);
    const FullState ns = full_step(st, s.disc, 2.0, 0.1, &q);
    auto [u2, b2] = testing::dense_full_step(st.u, st.B, s.grid.dx(),
                                             testing::dense_legendre_flux(4), 2.0, 0.1, &q);
    CHECK((ns.u - u2).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((ns.B - b2).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("full_step conserves mass and dissipates energy", "[full]") {
  testing::Rng rng(23);
  Slab s(40, 10, 4.0);
  FullState st{rng.matrix(40, 10), rng.vector(40).cwiseAbs(), 0.0};
  const double dt = 0.99 * s.grid.dx();
  const double m0 = total_mass(st.u, st.B, s.disc.mesh());
  double e_prev = total_energy(st.u, st.B);
  const double e0 = e_prev;
  for (int step = 0; step < 50; ++step) {
    st = full_step(st, s.disc, 1.0, dt);
    const double m = total_mass(st.u, st.B, s.disc.mesh());
    CHECK(relative_mass_error(m0, m) <= 1e-12);
    const double e = total_energy(st.u, st.B);
    CHECK(e <= e_prev + 1e-12 * e0);
    e_prev = e;
  }
}

TEST_CASE("full_step rejects bad input", "[full]") {
  Slab s(8, 4);
  FullState st{Matrix::Zero(8, 4), Vector::Zero(8), 0.0};
  CHECK_THROWS_AS(full_step(st, s.disc, 1.0, 0.0), std::invalid_argument);
  FullState bad{Matrix::Zero(7, 4), Vector::Zero(7), 0.0};
  CHECK_THROWS_AS(full_step(bad, s.disc, 1.0, 0.1), std::invalid_argument);
  const Vector q = Vector::Zero(3);
  CHECK_THROWS_AS(full_step(st, s.disc, 1.0, 0.1, &q), std::invalid_argument);
  st.u(2, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(full_step(st, s.disc, 1.0, 0.1), NumericalBlowup);
}
