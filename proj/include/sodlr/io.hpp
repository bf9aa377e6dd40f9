// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sodlr/diagnostics.hpp"
#include "sodlr/linalg.hpp"
#include "sodlr/transport.hpp"

namespace sodlr {

/// Scientific notation with 17 significant digits; parses back bit-exactly.
std::string format_double(double v);

/// Snapshot of a 1D run: columns x, phi, T, B.
void write_snapshot_1d(const std::filesystem::path& path, const Grid1D& grid, const Vector& phi,
                       const Vector& T, const Vector& B);

/// Snapshot of a 2D run in long format: columns x1, x2, phi, T; x1 varies fastest.
void write_snapshot_2d(const std::filesystem::path& path, const Mesh& mesh, const Vector& phi,
                       const Vector& T);

/// Columns t, rank, mass, energy, rel_mass_err, wall_s.
void write_history(const std::filesystem::path& path, const History& history);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws std::runtime_error if missing.
  std::size_t column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;
};

/// Reads a numeric CSV written by this module.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace sodlr
