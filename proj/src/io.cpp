// Copyright (c) 2026, the sodlr developers.
// SPDX-License-Identifier: Apache-2.0

#include "sodlr/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sodlr {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

void write_snapshot_1d(const std::filesystem::path& path, const Grid1D& grid, const Vector& phi,
                       const Vector& T, const Vector& B) {
  const int n = grid.n_x();
  if (phi.size() != n || T.size() != n || B.size() != n)
    throw std::invalid_argument("write_snapshot_1d: column lengths differ from the grid");
  std::ofstream out = open_for_write(path);
  out << "x,phi,T,B\n";
  for (int j = 0; j < n; ++j)
    out << format_double(grid.center(j)) << ',' << format_double(phi(j)) << ','
        << format_double(T(j)) << ',' << format_double(B(j)) << '\n';
  finish(out, path);
}

void write_snapshot_2d(const std::filesystem::path& path, const Mesh& mesh, const Vector& phi,
                       const Vector& T) {
  if (mesh.dim() != 2) throw std::invalid_argument("write_snapshot_2d: mesh must be 2D");
  if (phi.size() != mesh.n_cells() || T.size() != mesh.n_cells())
    throw std::invalid_argument("write_snapshot_2d: column lengths differ from the mesh");
  const Grid1D& g1 = mesh.axis(0);
  const Grid1D& g2 = mesh.axis(1);
  std::ofstream out = open_for_write(path);
  out << "x1,x2,phi,T\n";
  for (int i1 = 0; i1 < g2.n_x(); ++i1)
    for (int i0 = 0; i0 < g1.n_x(); ++i0) {
      const int j = i0 + g1.n_x() * i1;
      out << format_double(g1.center(i0)) << ',' << format_double(g2.center(i1)) << ','
          << format_double(phi(j)) << ',' << format_double(T(j)) << '\n';
    }
  finish(out, path);
}

void write_history(const std::filesystem::path& path, const History& history) {
  std::ofstream out = open_for_write(path);
  out << "t,rank,mass,energy,rel_mass_err,wall_s\n";
  for (const auto& r : history.rows())
    out << format_double(r.t) << ',' << r.rank << ',' << format_double(r.mass) << ','
        << format_double(r.energy) << ',' << format_double(r.rel_mass_err) << ','
        << format_double(r.wall_s) << '\n';
  finish(out, path);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::runtime_error("CSV has no column '" + name + "'");
}

std::vector<double> CsvTable::values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("'" + path.string() + "' is empty");
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) t.header.push_back(cell);
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t end = std::min(line.find(',', pos), line.size());
      double v = 0.0;
      const auto [p, ec] = std::from_chars(line.data() + pos, line.data() + end, v);
      if (ec != std::errc() || p != line.data() + end)
        throw std::runtime_error("'" + path.string() + "' line " + std::to_string(lineno) +
                                 ": bad number");
      row.push_back(v);
      pos = end + 1;
    }
    if (row.size() != t.header.size())
      throw std::runtime_error("'" + path.string() + "' line " + std::to_string(lineno) +
                               ": wrong number of fields");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace sodlr
