// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sodlr/config.hpp"
#include "sodlr/diagnostics.hpp"
#include "sodlr/full_solver.hpp"
#include "sodlr/low_rank.hpp"
#include "sodlr/problems.hpp"

namespace sodlr {

struct StepInfo {
  long step = 0;  // 1-based index of the step being taken
  double t_old = 0.0;
  double dt = 0.0;
};

using FullObserver =
    std::function<void(const StepInfo&, const FullState& before, const FullState& after)>;
using LowRankObserver =
    std::function<void(const StepInfo&, const LowRankState& before, const Vector& B_before,
                       const LowRankState& after, const Vector& B_after)>;

struct RunOptions {
  bool write_files = true;
  FullObserver on_full_step;
  LowRankObserver on_low_rank_step;
};

struct RunResult {
  History history;
  std::optional<FullState> full;
  std::optional<LowRankState> low_rank;
  Vector B;
  long steps = 0;
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;

  double t() const { return history.back().t; }
  Vector phi() const;
};

/// Time levels 0 = t_0 < t_1 < ... < t_n = t_end spaced by dt, with
/// snapshot times inserted so the run lands on them exactly.
std::vector<double> time_levels(double t_end, double dt, const std::vector<double>& snapshot_times);

/// Time step CFL * (smallest cell width).
double time_step(const RunConfig& cfg, const Discretization& disc);

RunResult run_full(const RunConfig& cfg, const ProblemSetup& setup, const RunOptions& opts = {});
RunResult run_dlra(const RunConfig& cfg, const ProblemSetup& setup, const RunOptions& opts = {});
RunResult run_naive(const RunConfig& cfg, const ProblemSetup& setup, const RunOptions& opts = {});

/// Builds the problem and dispatches on cfg.solver.
RunResult run(const RunConfig& cfg, const RunOptions& opts = {});

}  // namespace sodlr
