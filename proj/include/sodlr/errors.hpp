// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace sodlr {

/// Non-finite values appeared in a state. Carries the step index when known.
class NumericalBlowup : public std::runtime_error {
 public:
  explicit NumericalBlowup(const std::string& what, std::optional<long> step = std::nullopt)
      : std::runtime_error(step ? what + " (step " + std::to_string(*step) + ")" : what),
        step_(step) {}

  std::optional<long> step() const { return step_; }

 private:
  std::optional<long> step_;
};

/// A decomposition (eigen/SVD) did not converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The truncation tail criterion needs more than r_max columns.
class RankOverflow : public std::runtime_error {
 public:
  RankOverflow(int required, int r_max)
      : std::runtime_error("truncation needs rank " + std::to_string(required) +
                           " but r_max is " + std::to_string(r_max) +
                           "; increase theta_rel or r_max"),
        required_(required), r_max_(r_max) {}

  int required() const { return required_; }
  int r_max() const { return r_max_; }

 private:
  int required_;
  int r_max_;
};

/// Configuration text could not be parsed or failed validation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sodlr
