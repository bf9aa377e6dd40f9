// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "sodlr/errors.hpp"
#include "sodlr/problems.hpp"
#include "support/test_support.hpp"

using namespace sodlr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

RunConfig small(Problem p) {
  RunConfig c = default_config(p);
  if (p == Problem::beam_2d) {
    c.n_x = 10;
    c.n_y = 8;
    c.n_pn = 3;
  } else {
    c.n_x = 40;
    c.n_moments = 6;
  }
  return c;
}

}  // namespace

TEST_CASE("plane source profile", "[problems]") {
  CHECK_THAT(plane_source_profile(1.0, 0.03), WithinRel(13.29807601338109, 1e-14));
  CHECK(plane_source_profile(-5.0, 0.03) == 1e-4);
  CHECK(plane_source_profile(1.0 + 0.03, 0.03) ==
        Catch::Approx(13.29807601338109 * std::exp(-0.5)).epsilon(1e-13));
}

TEST_CASE("plane source setup", "[problems]") {
  const RunConfig cfg = small(Problem::plane_source);
  const ProblemSetup p = build_problem(cfg);
  CHECK(p.disc.n_cells() == 40);
  CHECK(p.disc.n_moments() == 6);
  CHECK(p.disc.mesh().axis(0).x_min() == -10.0);
  CHECK(p.disc.mesh().axis(0).x_max() == 10.0);
  CHECK(p.source.size() == 0);
  CHECK(p.source_ptr() == nullptr);
  CHECK((p.B0.array() == 1.0).all());
  const Matrix u0 = p.initial_moments();
  CHECK(u0.rightCols(5).norm() == 0.0);
  const auto& g = p.disc.mesh().axis(0);
  for (int j = 0; j < 40; ++j) CHECK(u0(j, 0) == plane_source_profile(g.center(j), 0.03));
  CHECK(p.warnings.empty());

  // Low-rank IC padded to the starting rank reproduces the dense IC.
  const LowRankState lr = p.initial_low_rank(4);
  CHECK(lr.rank() == 4);
  CHECK((lr.dense() - u0).norm() <= 1e-12 * u0.norm());
  CHECK(orthonormality_defect(lr.X) <= 1e-12);
  CHECK(orthonormality_defect(lr.V) <= 1e-12);
  CHECK((p.initial_full_state().u - u0).norm() == 0.0);

  RunConfig late = cfg;
  late.t_end = 9.5;
  CHECK(build_problem(late).warnings.size() == 1);
}

TEST_CASE("Su-Olson setup", "[problems]") {
  CHECK(overlap_fraction(-0.2, 0.1, 0.5) == 1.0);
  CHECK(overlap_fraction(0.0, 1.0, 0.5) == 0.5);
  CHECK(overlap_fraction(2.0, 3.0, 0.5) == 0.0);
  CHECK_THROWS_AS(overlap_fraction(1.0, 1.0, 0.5), std::invalid_argument);

  RunConfig cfg = small(Problem::su_olson);
  cfg.n_x = 20;  // unit cells, so [0, 1] straddles the source edge
  cfg.a_rad = 2.0;
  const ProblemSetup p = build_problem(cfg);
  REQUIRE(p.source.size() == 20);
  CHECK(p.source_ptr() != nullptr);
  CHECK(p.source(10) == 0.25);  // cell [0, 1]: half inside, divided by a_rad
  CHECK(p.source(9) == 0.25);
  CHECK(p.source(12) == 0.0);
  CHECK((p.B0.array() == 50.0).all());
  CHECK(p.a_rad == 2.0);

  cfg.n_x = 40;
  cfg.a_rad = 1.0;
  const ProblemSetup q = build_problem(cfg);
  CHECK(q.source(19) == 1.0);  // cell [-0.5, 0]
  CHECK(q.source(20) == 1.0);
  CHECK(q.source(21) == 0.0);
  CHECK(q.source.sum() * 0.5 == Catch::Approx(1.0));
}

TEST_CASE("beam profiles and projection", "[problems]") {
  CHECK_THAT(beam_spatial_profile(0.0, 0.0, 0.1), WithinRel(15915494.309189532, 1e-14));
  CHECK_THAT(beam_spatial_profile(0.1, 0.0, 0.1),
             WithinRel(15915494.309189532 * std::exp(-0.5), 1e-14));

  const AngularProjection a = project_angular_beam(9, 0.1);
  REQUIRE(a.coefficients.size() == 100);
  // Independent adaptive quadrature of the angular Gaussian.
  CHECK_THAT(a.coefficients(0), WithinRel(1.0725123482915575, 1e-10));
  CHECK_THAT(a.coefficients(sph_index(1, 0)), WithinRel(1.2451939790040898, 1e-10));
  CHECK_THAT(a.coefficients(sph_index(1, 1)), WithinRel(1.2451939790040898, 1e-10));
  CHECK(std::abs(a.coefficients(sph_index(1, -1))) < 1e-12);
  CHECK(a.energy_loss > 0.0);
  CHECK(a.energy_loss < 1.0);
  // More harmonics capture more of the profile.
  CHECK(project_angular_beam(15, 0.1).energy_loss < a.energy_loss);
}

TEST_CASE("beam setup", "[problems]") {
  const RunConfig cfg = small(Problem::beam_2d);
  const ProblemSetup p = build_problem(cfg);
  CHECK(p.disc.n_cells() == 80);
  CHECK(p.disc.n_moments() == 16);
  CHECK(p.disc.directions().size() == 2);
  CHECK(p.sigma == 0.5);
  CHECK((p.B0.array() == 1.0).all());
  const auto& g1 = p.disc.mesh().axis(0);
  const auto& g2 = p.disc.mesh().axis(1);
  CHECK(g1.n_x() == 10);
  CHECK(g2.n_x() == 8);
  CHECK(p.ic_X(3 + 10 * 5, 0) == beam_spatial_profile(g1.center(3), g2.center(5), 0.1));
  // n_pn = 3 cannot resolve a width-0.1 angular beam.
  CHECK_FALSE(p.warnings.empty());
  const LowRankState lr = p.initial_low_rank(5);
  const Matrix u0 = p.initial_moments();
  CHECK((lr.dense() - u0).norm() <= 1e-12 * u0.norm());
}

TEST_CASE("setups reject mismatched or invalid configs", "[problems]") {
  CHECK_THROWS_AS(plane_source_setup(small(Problem::su_olson)), ConfigError);
  CHECK_THROWS_AS(beam_2d_setup(small(Problem::plane_source)), ConfigError);
  RunConfig bad = small(Problem::plane_source);
  bad.n_x = 2;
  CHECK_THROWS_AS(build_problem(bad), ConfigError);
}
