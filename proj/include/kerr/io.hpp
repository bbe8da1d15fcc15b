// Copyright 2026 The kerrbistab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Artifact files. Every CSV starts with `#`-prefixed comment lines (the run
// configuration), then one header row, then data. Numbers are written in
// shortest round-trip form so a file re-read gives the same doubles.

#pragma once

#include "kerr/basin.hpp"
#include "kerr/classical.hpp"
#include "kerr/fock.hpp"
#include "kerr/langevin.hpp"
#include "kerr/liouvillian.hpp"
#include "kerr/master_equation.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace kerr {

/// Row-major numeric table with named columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<double> data;

  explicit Table(std::vector<std::string> cols) : columns(std::move(cols)) {}
  void add_row(std::initializer_list<double> row);
  void add_row(const std::vector<double>& row);
  std::size_t rows() const { return columns.empty() ? 0 : data.size() / columns.size(); }
  double at(std::size_t row, std::size_t col) const { return data[row * columns.size() + col]; }
};

std::string format_number(double x);

void write_csv(const std::filesystem::path& path, const Table& table,
               const std::vector<std::string>& comments = {});

/// Parses a file written by write_csv; comment lines are returned separately.
Table read_csv(const std::filesystem::path& path, std::vector<std::string>* comments = nullptr);

// Table builders for the exported schemas.
Table trajectory_table(const Trajectory<double>& traj, double period);  // t, re_a, im_a, abs2
Table fixed_point_table(const FixedPointSet<double>& roots);  // index, re_b, im_b, action, stable
Table action_table(const ActionSeries& series);                // t, I[, stderr]
Table occupation_table(const OccupationSeries& series);        // t, n
Table density_table(const DensityMatrix& rho);                 // n, m, re, im
Table density_magnitude_table(const DensityMatrix& rho);       // n, abs_m0 .. abs_m{N-1}
Table husimi_table(const HusimiField& field);                  // re_alpha, im_alpha, q
Table basin_table(const BasinMap& map);                        // re_a, im_a, label
Table spectrum_table(const VectorXc& eigenvalues);             // j, re, im
Table mode_diagonal_table(const ModeDiagonals& diag);          // n, rho0, rho1
Table survival_table(const EscapeStatistics& stats);           // t, S

/// Plain P2 greymap, maxval 2 (0 inner, 1 outer, 2 unresolved). The first
/// image row is the largest Im a, so the file views the right way up.
void write_label_pgm(const std::filesystem::path& path, const LabelGrid& labels);
LabelGrid read_label_pgm(const std::filesystem::path& path);

/// Geometry sidecar for a basin grid.
void write_basin_sidecar(const std::filesystem::path& path, const BasinMap& map,
                         const FixedPointSet<double>& roots, double nu);

/// Geometry sidecar for a Husimi grid.
void write_husimi_sidecar(const std::filesystem::path& path, const HusimiField& field, double t);

/// Collects the files of one run and writes manifest.json next to them.
class ArtifactSet {
 public:
  ArtifactSet(std::filesystem::path dir, std::vector<std::string> config_lines);

  const std::filesystem::path& dir() const { return dir_; }
  const std::vector<std::string>& comments() const { return comments_; }

  void csv(const std::string& name, const Table& table, const std::string& description);
  void pgm(const std::string& name, const LabelGrid& labels, const std::string& description);
  /// Registers a file already written by the caller.
  void add(const std::string& name, const std::string& format, const std::string& description,
           std::vector<std::string> columns = {});

  /// Writes manifest.json: experiment, config text, and every file with its schema.
  void write_manifest(const std::string& experiment, const std::string& config_text) const;

 private:
  struct Entry {
    std::string file;
    std::string format;
    std::string description;
    std::vector<std::string> columns;
  };
  std::filesystem::path dir_;
  std::vector<std::string> comments_;
  std::vector<Entry> entries_;
};

}  // namespace kerr
