// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "sodlr/truncation.hpp"

namespace sodlr {

enum class Problem { plane_source, su_olson, beam_2d };
enum class Solver { full, dlra, naive };

std::string to_string(Problem p);
std::string to_string(Solver s);
Problem parse_problem(const std::string& name);
Solver parse_solver(const std::string& name);

/// Run parameters. Defaults depend on the problem, see default_config().
struct RunConfig {
  Problem problem = Problem::plane_source;
  Solver solver = Solver::dlra;
  int n_x = 1000;
  int n_y = 0;            // 2D only
  int n_moments = 500;    // 1D Legendre moments
  int n_pn = 0;           // 2D spherical-harmonic degree
  double cfl = 0.99;
  double t_end = 8.0;
  double sigma = 1.0;
  double theta = 0.1;
  ThetaMode theta_mode = ThetaMode::relative;
  TruncationStrategy truncation = TruncationStrategy::conservative;
  int r_start = 20;
  int r_min = 1;
  int r_max = 100;
  double a_rad = 1.0;
  double b0 = 1.0;
  double sigma_ic = 0.03;     // width of the 1D initial pulse
  double sigma_x = 0.1;       // 2D spatial beam width
  double sigma_omega = 0.1;   // 2D angular beam width
  bool allow_large_cfl = false;
  std::string output_dir = "output";
  std::vector<double> snapshot_times;

  int n_cells() const { return problem == Problem::beam_2d ? n_x * n_y : n_x; }
  int angular_size() const {
    return problem == Problem::beam_2d ? (n_pn + 1) * (n_pn + 1) : n_moments;
  }
  TruncationConfig truncation_config() const { return {theta, theta_mode, r_min, r_max}; }
};

using ConfigOverrides = std::vector<std::pair<std::string, std::string>>;

/// Default parameters for a problem, mirroring the reference experiments.
RunConfig default_config(Problem problem);

/// Default output directory: $SODLR_OUTPUT_DIR if set, otherwise "output".
std::string default_output_dir();

/// Parse `key = value` text. Lines starting with '#' are comments. A
/// `[name]` header opens a section whose keys apply only when `problem`
/// equals `name`. Precedence: overrides, problem section, top level,
/// problem defaults. Throws ConfigError naming the offending key.
RunConfig parse_config(const std::string& text, const ConfigOverrides& overrides = {});
RunConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides = {});

/// Flat text that parses back to an identical RunConfig.
std::string serialize_config(const RunConfig& cfg);

/// Throws ConfigError if any constraint is violated.
void validate(const RunConfig& cfg);

/// Split "key=value". Throws ConfigError if there is no '='.
std::pair<std::string, std::string> split_override(const std::string& kv);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace sodlr
