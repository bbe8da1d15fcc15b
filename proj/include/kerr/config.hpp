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

// Run configuration as plain `key = value` text. Blank lines and lines
// starting with '#' are ignored; unknown keys are rejected.

#pragma once

#include "kerr/basin.hpp"
#include "kerr/eigensolver.hpp"
#include "kerr/langevin.hpp"
#include "kerr/params.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kerr {

inline constexpr const char* kOutputDirEnv = "KERR_OUTPUT_DIR";

struct RunConfig {
  std::string experiment;

  Params params = reference_params(1.2);

  // Frequency sweeps.
  double nu_min = 0.6;
  double nu_max = 2.4;
  double nu_step = 0.01;

  // Classical.
  GridBounds basin_bounds;
  int grid_resolution = 400;
  double horizon_relax = 20.0;  // units of T_gamma
  double steps_per_period = 100;
  int n_particles = 1000;
  std::optional<double> a0;  // default |b| of the outer root

  // Time series; t_final and sample_every in units of T.
  double t_final = 20.0;
  double sample_every = 0.1;
  std::vector<double> snapshot_times{0.0, 10.0, 20.0};

  // Quantum dynamics.
  int fock_dim = 120;
  double quantum_steps_per_period = 200;
  std::optional<int> n0;  // default round(|b_outer|^2)
  double husimi_extent = 6.0;
  int husimi_resolution = 121;

  // Liouvillian.
  int spectrum_dim = 40;
  int k = 100;
  EigenBackend backend = EigenBackend::kAuto;

  // Langevin.
  int n_traj = 1000;
  double nbar = 0.0;
  std::uint64_t seed = 1;
  double langevin_steps_per_period = 200;
  DriftScheme langevin_drift = DriftScheme::kRk4;
  BasinLabel escape_start = BasinLabel::kOuter;
  double escape_t_final = 1000.0;  // units of T
  double check_every = 1.0;        // units of T

  std::string output_dir;
  int threads = 0;

  bool operator==(const RunConfig&) const = default;

  /// Every key, one per line, in a fixed order.
  std::string to_text() const;
  std::vector<std::string> to_lines() const;

  /// Applies one key; throws Error(kConfig) naming the key on failure.
  void set(const std::string& key, const std::string& value);

  /// Range and consistency checks; throws Error(kConfig).
  void validate() const;

  static const std::vector<std::string>& keys();
};

/// Defaults, with output_dir taken from KERR_OUTPUT_DIR when set.
RunConfig default_config();

/// Applies `text` on top of `base`.
RunConfig parse_config(const std::string& text, RunConfig base = default_config());
RunConfig load_config(const std::string& path, RunConfig base = default_config());

std::vector<double> frequency_grid(double lo, double hi, double step);

}  // namespace kerr
