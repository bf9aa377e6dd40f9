// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include "sodlr/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "sodlr/dlra.hpp"
#include "sodlr/errors.hpp"
#include "sodlr/io.hpp"
#include "sodlr/naive_scheme.hpp"

namespace sodlr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Writes snapshots at requested levels and the history at the end.
class OutputSink {
 public:
  OutputSink(const RunConfig& cfg, const ProblemSetup& setup, const std::vector<double>& levels,
             bool enabled)
      : cfg_(cfg), setup_(setup), enabled_(enabled) {
    std::vector<double> wanted = cfg.snapshot_times;
    wanted.push_back(cfg.t_end);
    for (double s : wanted) {
      const auto it = std::min_element(levels.begin(), levels.end(), [s](double a, double b) {
        return std::abs(a - s) < std::abs(b - s);
      });
      marks_.push_back(std::size_t(it - levels.begin()));
    }
    std::sort(marks_.begin(), marks_.end());
    marks_.erase(std::unique(marks_.begin(), marks_.end()), marks_.end());
  }

  void at_level(std::size_t k, double t, const Vector& phi, const Vector& B, RunResult& result) {
    if (!enabled_ || !std::binary_search(marks_.begin(), marks_.end(), k)) return;
    char name[96];
    std::snprintf(name, sizeof name, "%s_snapshot_t%.6g.csv", to_string(cfg_.solver).c_str(), t);
    const std::filesystem::path path = std::filesystem::path(cfg_.output_dir) / name;
    const Vector T = temperature(B, setup_.a_rad);
    if (setup_.disc.mesh().dim() == 1)
      write_snapshot_1d(path, setup_.disc.mesh().axis(0), phi, T, B);
    else
      write_snapshot_2d(path, setup_.disc.mesh(), phi, T);
    result.files.push_back(path);
  }

  void finish(RunResult& result) {
    if (!enabled_) return;
    const std::filesystem::path path =
        std::filesystem::path(cfg_.output_dir) / ("history_" + to_string(cfg_.solver) + ".csv");
    write_history(path, result.history);
    result.files.push_back(path);
  }

 private:
  const RunConfig& cfg_;
  const ProblemSetup& setup_;
  bool enabled_;
  std::vector<std::size_t> marks_;
};

void check_setup(const RunConfig& cfg, const ProblemSetup& setup) {
  validate(cfg);
  if (setup.disc.n_moments() != cfg.angular_size() || setup.disc.n_cells() != cfg.n_cells())
    throw ConfigError("problem setup does not match the run config");
}

}  // namespace

Vector RunResult::phi() const {
  if (full) return scalar_flux(full->u);
  if (low_rank) return scalar_flux(*low_rank);
  return {};
}

std::vector<double> time_levels(double t_end, double dt, const std::vector<double>& snapshot_times) {
  if (!(dt > 0.0)) throw std::invalid_argument("time_levels: dt must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("time_levels: t_end must be >= 0");
  const long n = t_end > 0.0 ? long(std::ceil(t_end / dt - 1e-12)) : 0;
  std::vector<double> levels;
  levels.reserve(std::size_t(n) + 1 + snapshot_times.size());
  for (long k = 0; k <= n; ++k) levels.push_back(std::min(double(k) * dt, t_end));
  const double tol = 1e-12 * std::max(1.0, t_end);
  for (double s : snapshot_times) {
    if (s < 0.0 || s > t_end) continue;
    const auto it = std::lower_bound(levels.begin(), levels.end(), s);
    const bool near_next = it != levels.end() && std::abs(*it - s) <= tol;
    const bool near_prev = it != levels.begin() && std::abs(*(it - 1) - s) <= tol;
    if (near_next) *it = s;
    else if (near_prev) *(it - 1) = s;
    else levels.insert(it, s);
  }
  levels.front() = 0.0;
  return levels;
}

double time_step(const RunConfig& cfg, const Discretization& disc) {
  return cfg.cfl * disc.mesh().min_dx();
}

RunResult run_full(const RunConfig& cfg, const ProblemSetup& setup, const RunOptions& opts) {
  check_setup(cfg, setup);
  const auto levels = time_levels(cfg.t_end, time_step(cfg, setup.disc), cfg.snapshot_times);
  RunResult result;
  result.warnings = setup.warnings;
  OutputSink sink(cfg, setup, levels, opts.write_files);
  const Mesh& mesh = setup.disc.mesh();

  FullState state = setup.initial_full_state();
  const auto start = Clock::now();
  result.history.record(0.0, setup.disc.n_moments(), total_mass(state.u, state.B, mesh),
                        total_energy(state.u, state.B), 0.0);
  sink.at_level(0, 0.0, scalar_flux(state.u), state.B, result);

  for (std::size_t k = 1; k < levels.size(); ++k) {
    const StepInfo info{long(k), levels[k - 1], levels[k] - levels[k - 1]};
    FullState next;
    try {
      next = full_step(state, setup.disc, setup.sigma, info.dt, setup.source_ptr());
    } catch (const NumericalBlowup& e) {
      throw NumericalBlowup(std::string("full solver: ") + e.what(), info.step);
    }
    next.t = levels[k];
    if (opts.on_full_step) opts.on_full_step(info, state, next);
    state = std::move(next);
    const double energy = total_energy(state.u, state.B);
    if (!std::isfinite(energy)) throw NumericalBlowup("full solver energy is not finite", info.step);
    result.history.record(state.t, setup.disc.n_moments(), total_mass(state.u, state.B, mesh),
                          energy, seconds_since(start));
    sink.at_level(k, state.t, scalar_flux(state.u), state.B, result);
  }
  result.steps = long(levels.size()) - 1;
  result.B = state.B;
  result.full = std::move(state);
  sink.finish(result);
  return result;
}

namespace {

template <typename Step>
RunResult run_low_rank(const RunConfig& cfg, const ProblemSetup& setup, const RunOptions& opts,
                       const char* label, Step&& step) {
  check_setup(cfg, setup);
  const auto levels = time_levels(cfg.t_end, time_step(cfg, setup.disc), cfg.snapshot_times);
  RunResult result;
  result.warnings = setup.warnings;
  OutputSink sink(cfg, setup, levels, opts.write_files);
  const Mesh& mesh = setup.disc.mesh();

  LowRankState state = setup.initial_low_rank(cfg.r_start);
  Vector B = setup.B0;
  const auto start = Clock::now();
  result.history.record(0.0, state.rank(), total_mass(state, B, mesh), total_energy(state, B), 0.0);
  sink.at_level(0, 0.0, scalar_flux(state), B, result);

  for (std::size_t k = 1; k < levels.size(); ++k) {
    const StepInfo info{long(k), levels[k - 1], levels[k] - levels[k - 1]};
    std::pair<LowRankState, Vector> next;
    try {
      next = step(state, B, info.dt);
    } catch (const NumericalBlowup& e) {
      throw NumericalBlowup(std::string(label) + " solver: " + e.what(), info.step);
    }
    next.first.t = levels[k];
    if (opts.on_low_rank_step) opts.on_low_rank_step(info, state, B, next.first, next.second);
    state = std::move(next.first);
    B = std::move(next.second);
    const double energy = total_energy(state, B);
    if (!std::isfinite(energy))
      throw NumericalBlowup(std::string(label) + " solver energy is not finite", info.step);
    result.history.record(state.t, state.rank(), total_mass(state, B, mesh), energy,
                          seconds_since(start));
    sink.at_level(k, state.t, scalar_flux(state), B, result);
  }
  result.steps = long(levels.size()) - 1;
  result.B = std::move(B);
  result.low_rank = std::move(state);
  sink.finish(result);
  return result;
}

}  // namespace

RunResult run_dlra(const RunConfig& cfg, const ProblemSetup& setup, const RunOptions& opts) {
  DlraStepConfig step_cfg;
  step_cfg.sigma = setup.sigma;
  step_cfg.source = setup.source_ptr();
  step_cfg.truncation = cfg.truncation_config();
  step_cfg.strategy = cfg.truncation;
  step_cfg.allow_large_dt = cfg.allow_large_cfl;
  DlraWorkspace ws;
  return run_low_rank(cfg, setup, opts, "dlra",
                      [&](const LowRankState& s, const Vector& B, double dt) {
                        step_cfg.dt = dt;
                        DlraStepResult r = dlra_step(s, B, setup.disc, step_cfg, &ws);
                        return std::make_pair(std::move(r.state), std::move(r.B));
                      });
}

RunResult run_naive(const RunConfig& cfg, const ProblemSetup& setup, const RunOptions& opts) {
  if (setup.source_ptr())
    throw ConfigError("solver 'naive' does not support problems with a source term");
  const TruncationConfig trunc = cfg.truncation_config();
  return run_low_rank(cfg, setup, opts, "naive",
                      [&](const LowRankState& s, const Vector& B, double dt) {
                        NaiveStepResult r = naive_step(s, B, setup.disc, setup.sigma, dt, trunc);
                        return std::make_pair(std::move(r.state), std::move(r.B));
                      });
}

RunResult run(const RunConfig& cfg, const RunOptions& opts) {
  const ProblemSetup setup = build_problem(cfg);
  switch (cfg.solver) {
    case Solver::full: return run_full(cfg, setup, opts);
    case Solver::dlra: return run_dlra(cfg, setup, opts);
    case Solver::naive: return run_naive(cfg, setup, opts);
  }
  throw ConfigError("unknown solver");
}

}  // namespace sodlr
