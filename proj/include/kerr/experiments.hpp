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

// Named experiments. Each writes its artifacts plus manifest.json into
// <output_dir>/<experiment>/.

#pragma once

#include "kerr/config.hpp"
#include "kerr/master_equation.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace kerr {

const std::vector<std::string>& experiment_names();

/// Default circle-ensemble radius: |b| of the outer (largest action) root.
double default_circle_radius(const Params& p);

double resolved_a0(const RunConfig& cfg);
int resolved_n0(const RunConfig& cfg);

/// Samples shared by the classical, quantum and Langevin series.
struct Fig3Series {
  std::vector<double> t;  // units of T
  std::vector<double> classical;
  std::vector<double> quantum;
  std::vector<double> langevin;
  std::vector<double> langevin_stderr;
};

Fig3Series compare_fig3(const RunConfig& cfg);

/// Runs cfg.experiment; returns the directory written.
std::filesystem::path run_experiment(const RunConfig& cfg);

}  // namespace kerr
