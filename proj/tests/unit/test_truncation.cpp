// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "sodlr/errors.hpp"
#include "sodlr/truncation.hpp"
#include "support/test_support.hpp"

using namespace sodlr;

namespace {

Vector values(std::initializer_list<double> v) {
  Vector out(v.size());
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Factors with V's first column equal to e_1, as produced by the flux step.
struct Factors {
  Matrix X, S, V;
};

Factors random_factors(testing::Rng& rng, int n, int m, int k, int l) {
  Factors f;
  f.X = rng.orthonormal(n, k);
  f.V = Matrix::Zero(m, l);
  f.V(0, 0) = 1.0;
  f.V.bottomRightCorner(m - 1, l - 1) = rng.orthonormal(m - 1, l - 1);
  f.S = rng.matrix(k, l);
  return f;
}

}  // namespace

TEST_CASE("tail_rank", "[truncation]") {
  CHECK(tail_rank(values({1.0, 1e-3, 1e-9}), 1e-2) == 1);
  CHECK(tail_rank(values({1.0, 1e-3, 1e-9}), 1e-4) == 2);
  CHECK(tail_rank(values({1.0, 1e-3, 1e-9}), 0.0) == 3);
  CHECK(tail_rank(values({1.0, 0.5, 0.0}), 0.0) == 2);
  CHECK(tail_rank(values({1.0, 0.6, 0.8}), 1.0) == 1);  // tail norm exactly 1
  CHECK(tail_rank(values({3.0}), 10.0) == 0);
  CHECK(tail_rank(Vector(0), 1.0) == 0);
}

TEST_CASE("truncation_tolerance", "[truncation]") {
  TruncationConfig cfg;
  cfg.theta = 0.1;
  CHECK(truncation_tolerance(values({4.0, 1.0}), cfg) == Catch::Approx(0.4));
  cfg.mode = ThetaMode::absolute;
  CHECK(truncation_tolerance(values({4.0, 1.0}), cfg) == 0.1);
  cfg.theta = -1.0;
  CHECK_THROWS_AS(truncation_tolerance(values({1.0}), cfg), std::invalid_argument);
}

TEST_CASE("truncate_standard", "[truncation]") {
  testing::Rng rng(71);
  const Matrix X = rng.orthonormal(30, 3), V = rng.orthonormal(20, 3);

  SECTION("tail criterion example") {
    const Matrix S = rng.with_singular_values(values({1.0, 1e-3, 1e-9}));
    TruncationConfig cfg;
    cfg.theta = 1e-2;
    cfg.mode = ThetaMode::absolute;
    const LowRankState t = truncate_standard(X, S, V, cfg);
    CHECK(t.rank() == 1);
    CHECK((X * S * V.transpose() - t.dense()).norm() <= 1e-2);
  }
  SECTION("zero tolerance keeps everything") {
    const Matrix S = rng.matrix(3, 3);
    TruncationConfig cfg;
    cfg.theta = 0.0;
    const LowRankState t = truncate_standard(X, S, V, cfg);
    CHECK(t.rank() == 3);
    CHECK((X * S * V.transpose() - t.dense()).norm() <= 1e-12 * S.norm());
  }
  SECTION("random Frobenius error bound and rank bounds") {
    for (int trial = 0; trial < 50; ++trial) {
      const int k = rng.integer(2, 10);
      const Matrix Xk = rng.orthonormal(40, k), Vk = rng.orthonormal(25, k);
      Vector sv(k);
      for (int i = 0; i < k; ++i) sv(i) = std::pow(10.0, -0.7 * i);
      const Matrix S = rng.with_singular_values(sv);
      TruncationConfig cfg;
      cfg.theta = rng.uniform(1e-4, 0.3);
      cfg.r_min = rng.integer(1, 2);
      const LowRankState t = truncate_standard(Xk, S, Vk, cfg);
      const double err = (Xk * S * Vk.transpose() - t.dense()).norm();
      if (t.rank() > cfg.r_min) CHECK(err <= cfg.theta * sv(0) * (1 + 1e-12));
      CHECK(t.rank() >= cfg.r_min);
      CHECK(orthonormality_defect(t.X) <= 1e-10);
      CHECK(orthonormality_defect(t.V) <= 1e-10);
    }
  }
  SECTION("r_min forces extra columns") {
    const Matrix S = rng.with_singular_values(values({1.0, 1e-3, 1e-9}));
    TruncationConfig cfg;
    cfg.theta = 0.5;
    cfg.r_min = 2;
    CHECK(truncate_standard(X, S, V, cfg).rank() == 2);
  }
  SECTION("overflow and bad bounds") {
    const Matrix S = rng.matrix(3, 3);
    TruncationConfig cfg;
    cfg.theta = 0.0;
    cfg.r_max = 2;
    CHECK_THROWS_AS(truncate_standard(X, S, V, cfg), RankOverflow);
    cfg.r_min = 3;
    CHECK_THROWS_AS(truncate_standard(X, S, V, cfg), std::invalid_argument);
  }
}

TEST_CASE("truncate_conservative preserves the zeroth column", "[truncation]") {
  testing::Rng rng(73);

  SECTION("randomized property") {
    for (int trial = 0; trial < 100; ++trial) {
      const int k = rng.integer(2, 10), l = rng.integer(2, 10);
      const Factors f = random_factors(rng, 50, 30, k, l);
      TruncationConfig cfg;
      cfg.theta = rng.uniform(0.0, 0.9);
      const LowRankState t = truncate_conservative(f.X, f.S, f.V, cfg);
      const Vector before = f.X * (f.S * f.V.row(0).transpose());
      const Vector after = t.zeroth_moment();
      CHECK((after - before).norm() <= 1e-13 * before.norm());
      CHECK(std::abs(after.sum() - before.sum()) <= 1e-13 * before.cwiseAbs().sum());
      CHECK(orthonormality_defect(t.X) <= 1e-10);
      CHECK(orthonormality_defect(t.V) <= 1e-10);
      CHECK(t.rank() >= cfg.r_min);
      CHECK(t.rank() <= cfg.r_max);
    }
  }
  SECTION("large tolerance drops the nonzero moments") {
    const Factors f = random_factors(rng, 50, 30, 5, 5);
    TruncationConfig cfg;
    cfg.theta = 1e6;
    cfg.mode = ThetaMode::absolute;
    const LowRankState t = truncate_conservative(f.X, f.S, f.V, cfg);
    CHECK(t.rank() == 1);
    const Matrix u = t.dense();
    CHECK(u.rightCols(29).norm() <= 1e-13);
    const Vector before = f.X * (f.S * f.V.row(0).transpose());
    CHECK((u.col(0) - before).norm() <= 1e-13 * before.norm());
  }
  SECTION("zero tolerance reproduces the input") {
    const Factors f = random_factors(rng, 50, 30, 6, 4);
    TruncationConfig cfg;
    cfg.theta = 0.0;
    const LowRankState t = truncate_conservative(f.X, f.S, f.V, cfg);
    const Matrix u = f.X * f.S * f.V.transpose();
    CHECK((t.dense() - u).norm() <= 1e-12 * u.norm());
  }
  SECTION("isotropic input") {
    Factors f = random_factors(rng, 50, 30, 3, 3);
    f.S.rightCols(2).setZero();
    TruncationConfig cfg;
    cfg.theta = 0.0;
    const LowRankState t = truncate_conservative(f.X, f.S, f.V, cfg);
    CHECK(t.rank() == 1);
    const Matrix u = f.X * f.S * f.V.transpose();
    CHECK((t.dense() - u).norm() <= 1e-12 * u.norm());
  }
  SECTION("zero conserved column") {
    Factors f = random_factors(rng, 50, 30, 4, 4);
    f.S.col(0).setZero();
    TruncationConfig cfg;
    cfg.theta = 0.0;
    const LowRankState t = truncate_conservative(f.X, f.S, f.V, cfg);
    const Matrix u = f.X * f.S * f.V.transpose();
    CHECK((t.dense() - u).norm() <= 1e-12 * u.norm());
    CHECK(t.zeroth_moment().norm() <= 1e-13 * u.norm());
    CHECK(orthonormality_defect(t.X) <= 1e-10);
  }
  SECTION("rank overflow") {
    const Factors f = random_factors(rng, 50, 30, 6, 6);
    TruncationConfig cfg;
    cfg.theta = 0.0;
    cfg.r_max = 3;
    CHECK_THROWS_AS(truncate_conservative(f.X, f.S, f.V, cfg), RankOverflow);
  }
}
