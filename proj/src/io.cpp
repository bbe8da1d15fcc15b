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

#include "kerr/io.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace kerr {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

void Table::add_row(std::initializer_list<double> row) {
  if (row.size() != columns.size()) throw Error(ErrorKind::kInvalidArgument, "row width mismatch");
  data.insert(data.end(), row.begin(), row.end());
}

void Table::add_row(const std::vector<double>& row) {
  if (row.size() != columns.size()) throw Error(ErrorKind::kInvalidArgument, "row width mismatch");
  data.insert(data.end(), row.begin(), row.end());
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kConfig, "cannot write " + path.string());
  return out;
}

double parse_number(std::string_view s, const fs::path& path) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::kConfig, path.string() + ": bad number '" + std::string(s) + "'");
  return x;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

json bounds_json(const GridBounds& b) {
  return {{"re_min", b.re_min}, {"re_max", b.re_max}, {"im_min", b.im_min}, {"im_max", b.im_max}};
}

}  // namespace

void write_csv(const fs::path& path, const Table& table, const std::vector<std::string>& comments) {
  std::ofstream out = open_out(path);
  for (const auto& c : comments) out << "# " << c << '\n';
  for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << table.columns[j];
  out << '\n';
  const std::size_t w = table.columns.size();
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t j = 0; j < w; ++j) out << (j ? "," : "") << format_number(table.at(r, j));
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::kConfig, "write failed: " + path.string());
}

Table read_csv(const fs::path& path, std::vector<std::string>* comments) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kConfig, "cannot read " + path.string());
  std::string line;
  std::optional<Table> table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (comments) comments->push_back(line.size() > 2 ? line.substr(2) : std::string());
      continue;
    }
    if (!table) {
      table.emplace(split(line, ','));
      continue;
    }
    const auto cells = split(line, ',');
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_number(c, path));
    table->add_row(row);
  }
  if (!table) throw Error(ErrorKind::kConfig, path.string() + ": missing header row");
  return *table;
}

Table trajectory_table(const Trajectory<double>& traj, double period) {
  Table t({"t", "re_a", "im_a", "abs2"});
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const Complex a = traj.points[i];
    t.add_row({traj.times[i] / period, a.real(), a.imag(), std::norm(a)});
  }
  return t;
}

Table fixed_point_table(const FixedPointSet<double>& roots) {
  Table t({"index", "re_b", "im_b", "action", "stable"});
  for (std::size_t i = 0; i < roots.roots.size(); ++i) {
    const auto& r = roots.roots[i];
    t.add_row({static_cast<double>(i), r.b.real(), r.b.imag(), r.action, r.stable ? 1.0 : 0.0});
  }
  return t;
}

Table action_table(const ActionSeries& series) {
  const bool with_err = !series.stderrs.empty();
  Table t(with_err ? std::vector<std::string>{"t", "I", "stderr"} : std::vector<std::string>{"t", "I"});
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    if (with_err)
      t.add_row({series.times[i], series.values[i], series.stderrs[i]});
    else
      t.add_row({series.times[i], series.values[i]});
  }
  return t;
}

Table occupation_table(const OccupationSeries& series) {
  Table t({"t", "n"});
  for (std::size_t i = 0; i < series.times.size(); ++i) t.add_row({series.times[i], series.values[i]});
  return t;
}

Table density_table(const DensityMatrix& rho) {
  Table t({"n", "m", "re", "im"});
  for (Index n = 0; n < rho.rows(); ++n)
    for (Index m = 0; m < rho.cols(); ++m)
      t.add_row({static_cast<double>(n), static_cast<double>(m), rho(n, m).real(), rho(n, m).imag()});
  return t;
}

Table density_magnitude_table(const DensityMatrix& rho) {
  std::vector<std::string> cols{"n"};
  for (Index m = 0; m < rho.cols(); ++m) cols.push_back("abs_m" + std::to_string(m));
  Table t(std::move(cols));
  std::vector<double> row(rho.cols() + 1);
  for (Index n = 0; n < rho.rows(); ++n) {
    row[0] = static_cast<double>(n);
    for (Index m = 0; m < rho.cols(); ++m) row[m + 1] = std::abs(rho(n, m));
    t.add_row(row);
  }
  return t;
}

Table husimi_table(const HusimiField& field) {
  Table t({"re_alpha", "im_alpha", "q"});
  for (Index r = 0; r < field.values.rows(); ++r)
    for (Index c = 0; c < field.values.cols(); ++c) {
      const Complex z = field.grid.point(r, c);
      t.add_row({z.real(), z.imag(), field.values(r, c)});
    }
  return t;
}

Table basin_table(const BasinMap& map) {
  Table t({"re_a", "im_a", "label"});
  for (Index r = 0; r < map.labels.rows(); ++r)
    for (Index c = 0; c < map.labels.cols(); ++c) {
      const Complex z = map.pixel_center(r, c);
      t.add_row({z.real(), z.imag(), static_cast<double>(map.labels(r, c))});
    }
  return t;
}

Table spectrum_table(const VectorXc& eigenvalues) {
  Table t({"j", "re", "im"});
  for (Index j = 0; j < eigenvalues.size(); ++j)
    t.add_row({static_cast<double>(j), eigenvalues(j).real(), eigenvalues(j).imag()});
  return t;
}

Table mode_diagonal_table(const ModeDiagonals& diag) {
  Table t({"n", "rho0", "rho1"});
  for (Index n = 0; n < diag.steady.size(); ++n)
    t.add_row({static_cast<double>(n), diag.steady(n), diag.metastable(n)});
  return t;
}

Table survival_table(const EscapeStatistics& stats) {
  Table t({"t", "S"});
  for (std::size_t i = 0; i < stats.times.size(); ++i) t.add_row({stats.times[i], stats.survival[i]});
  return t;
}

void write_label_pgm(const fs::path& path, const LabelGrid& labels) {
  std::ofstream out = open_out(path);
  out << "P2\n" << labels.cols() << ' ' << labels.rows() << "\n2\n";
  for (Index r = labels.rows() - 1; r >= 0; --r) {
    for (Index c = 0; c < labels.cols(); ++c)
      out << (c ? " " : "") << static_cast<int>(labels(r, c));
    out << '\n';
  }
}

LabelGrid read_label_pgm(const fs::path& path) {
  std::ifstream in(path);
  std::string magic;
  Index w = 0, h = 0;
  int maxval = 0;
  in >> magic >> w >> h >> maxval;
  if (!in || magic != "P2" || w < 1 || h < 1)
    throw Error(ErrorKind::kConfig, path.string() + ": not a P2 greymap");
  LabelGrid labels(h, w);
  for (Index r = h - 1; r >= 0; --r)
    for (Index c = 0; c < w; ++c) {
      int v = 0;
      if (!(in >> v) || v < 0 || v > maxval)
        throw Error(ErrorKind::kConfig, path.string() + ": truncated or bad pixel");
      labels(r, c) = static_cast<std::uint8_t>(v);
    }
  return labels;
}

void write_basin_sidecar(const fs::path& path, const BasinMap& map,
                         const FixedPointSet<double>& roots, double nu) {
  json j;
  j["nu"] = nu;
  j["bounds"] = bounds_json(map.bounds);
  j["resolution"] = map.resolution;
  j["pixel_centers"] = "re = re_min + (col + 0.5) * (re_max - re_min) / resolution";
  j["row_order"] = "first image row has the largest Im a";
  j["labels"] = {{"0", "inner"}, {"1", "outer"}, {"2", "unresolved"}};
  j["fractions"] = {{"outer", map.fractions.outer},
                    {"inner", map.fractions.inner},
                    {"unresolved", map.fractions.unresolved}};
  json rj = json::array();
  for (const auto& r : roots.roots)
    rj.push_back({{"re", r.b.real()}, {"im", r.b.imag()}, {"action", r.action}, {"stable", r.stable}});
  j["roots"] = rj;
  open_out(path) << j.dump(2) << '\n';
}

void write_husimi_sidecar(const fs::path& path, const HusimiField& field, double t) {
  json j;
  j["t"] = t;
  j["bounds"] = bounds_json(field.grid.bounds);
  j["resolution"] = field.grid.resolution;
  j["points"] = "edges inclusive; row index runs along Im alpha, column along Re alpha";
  j["max"] = field.values.size() ? field.values.maxCoeff() : 0.0;
  open_out(path) << j.dump(2) << '\n';
}

ArtifactSet::ArtifactSet(fs::path dir, std::vector<std::string> config_lines)
    : dir_(std::move(dir)), comments_(std::move(config_lines)) {
  fs::create_directories(dir_);
}

void ArtifactSet::csv(const std::string& name, const Table& table, const std::string& description) {
  write_csv(dir_ / name, table, comments_);
  add(name, "csv", description, table.columns);
}

void ArtifactSet::pgm(const std::string& name, const LabelGrid& labels,
                      const std::string& description) {
  write_label_pgm(dir_ / name, labels);
  add(name, "pgm-p2", description);
}

void ArtifactSet::add(const std::string& name, const std::string& format,
                      const std::string& description, std::vector<std::string> columns) {
  entries_.push_back({name, format, description, std::move(columns)});
}

void ArtifactSet::write_manifest(const std::string& experiment, const std::string& config_text) const {
  json j;
  j["experiment"] = experiment;
  j["time_unit"] = "T = 2 pi / omega";
  j["frame"] = "rotating at the drive frequency nu";
  j["config"] = config_text;
  json files = json::array();
  for (const auto& e : entries_) {
    json f{{"file", e.file}, {"format", e.format}, {"description", e.description}};
    if (!e.columns.empty()) f["columns"] = e.columns;
    files.push_back(std::move(f));
  }
  j["files"] = files;
  open_out(dir_ / "manifest.json") << j.dump(2) << '\n';
}

}  // namespace kerr
