// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

// Command-line driver: sodlr --problem NAME --solver {full,dlra,naive} [--config PATH]
//   [--output-dir PATH] [--set key=value ...]
// Exit codes: 0 success, 2 invalid configuration, 3 numerical blowup, 1 other errors.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "sodlr/config.hpp"
#include "sodlr/errors.hpp"
#include "sodlr/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBlowup = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-stable rank-adaptive low-rank solver for thermal radiative transfer"};
  std::string config_path;
  std::string problem;
  std::string solver;
  std::string output_dir;
  std::vector<std::string> sets;
  bool quiet = false;
  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--problem", problem, "plane_source, su_olson or beam_2d");
  app.add_option("--solver", solver, "full, dlra or naive");
  app.add_option("--output-dir", output_dir, "directory for snapshot and history CSV files");
  app.add_option("--set", sets, "override a configuration key (key=value), repeatable");
  app.add_flag("--quiet", quiet, "print nothing on success");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    sodlr::ConfigOverrides overrides;
    for (const auto& kv : sets) overrides.push_back(sodlr::split_override(kv));
    if (!problem.empty()) overrides.emplace_back("problem", problem);
    if (!solver.empty()) overrides.emplace_back("solver", solver);
    if (!output_dir.empty()) overrides.emplace_back("output_dir", output_dir);

    const sodlr::RunConfig cfg = config_path.empty() ? sodlr::parse_config("", overrides)
                                                     : sodlr::load_config(config_path, overrides);
    std::filesystem::create_directories(cfg.output_dir);
    {
      const auto used = std::filesystem::path(cfg.output_dir) / ("config_" + sodlr::to_string(cfg.solver) + ".cfg");
      std::ofstream out(used);
      out << sodlr::serialize_config(cfg);
      if (!out) throw std::runtime_error("cannot write '" + used.string() + "'");
    }

    const sodlr::RunResult result = sodlr::run(cfg);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    if (!quiet) {
      const auto& last = result.history.back();
      std::printf("%s/%s: %ld steps to t = %.6g, rank %d, energy %.10e, relative mass error %.3e, %.3f s\n",
                  sodlr::to_string(cfg.problem).c_str(), sodlr::to_string(cfg.solver).c_str(),
                  result.steps, last.t, last.rank, last.energy, last.rel_mass_err, last.wall_s);
      for (const auto& f : result.files) std::printf("  wrote %s\n", f.string().c_str());
    }
    return kExitOk;
  } catch (const sodlr::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const sodlr::RankOverflow& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const sodlr::NumericalBlowup& e) {
    std::cerr << "numerical blowup: " << e.what() << '\n';
    return kExitBlowup;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
