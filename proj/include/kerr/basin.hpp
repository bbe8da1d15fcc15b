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

#pragma once

#include "kerr/classical.hpp"
#include "kerr/common.hpp"
#include "kerr/params.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace kerr {

/// Pixel labels; the numeric values are the greymap encoding.
enum class BasinLabel : std::uint8_t { kInner = 0, kOuter = 1, kUnresolved = 2 };

struct BasinGridConfig {
  GridBounds bounds;
  int resolution = 400;          // pixels per side
  double horizon_relax = 20.0;   // integration horizon in units of T_gamma
  double steps_per_period = 100; // RK4 steps per T = 2 pi / omega
  // Stop a pixel once it has settled on a stable root; see classify_point.
  bool early_capture = true;
  int threads = 0;
};

struct BasinFractions {
  double outer = 0.0;
  double inner = 0.0;
  double unresolved = 0.0;
};

using LabelGrid = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Row r spans Re a at fixed Im a; row 0 is the smallest Im a.
struct BasinMap {
  GridBounds bounds;
  int resolution = 0;
  LabelGrid labels;
  BasinFractions fractions;

  Complex pixel_center(Index row, Index col) const;
  BasinLabel label(Index row, Index col) const { return static_cast<BasinLabel>(labels(row, col)); }
};

/// Integrates b0 for `horizon` time units and labels it by the stable root
/// whose classification radius contains the endpoint. With early capture the
/// integration stops once the trajectory has stayed within a capture disk of
/// a stable root for one amplitude e-folding time 2/gamma; the capture disk is
/// the classification disk shrunk to a quarter of the root-saddle distance.
BasinLabel classify_point(const Params& p, const FixedPointSet<double>& roots, Complex b0,
                          double horizon, double dt, bool early_capture);

BasinMap classify_grid(const Params& p, const BasinGridConfig& cfg);

struct SweepPoint {
  double nu;
  BasinFractions fractions;
  bool bistable;
};

/// Outside the bistable window the single attractor owns the whole plane:
/// fraction 1 for an outer-branch root, 0 for an inner-branch root.
std::vector<SweepPoint> basin_fraction_sweep(const Params& p, const std::vector<double>& nus,
                                             const BasinGridConfig& cfg);

/// nu where the outer fraction crosses 1/2, linearly interpolated between
/// neighbouring sweep points. Empty if no crossing.
std::optional<double> half_crossing(const std::vector<SweepPoint>& sweep);

// ---------------------------------------------------------------------------
// Circle ensembles

struct CircleEnsemble {
  double a0 = 1.0;
  int n_particles = 100;

  /// theta_k = 2 pi k / n (deterministic, no sampling noise).
  Complex member(Index k) const {
    return std::polar(a0, kTwoPi * static_cast<double>(k) / static_cast<double>(n_particles));
  }
};

struct ActionSeries {
  std::vector<double> times;  // units of T = 2 pi / omega
  std::vector<double> values;
  std::vector<double> stderrs;  // empty for noiseless ensembles
};

/// Deterministic time grid shared by ensemble integrators: n = ceil(t/dt)
/// RK4 (or Euler-Maruyama) steps of size t/n, sampled every `stride` steps
/// and at the endpoint.
struct StepPlan {
  long n_steps = 0;
  double h = 0.0;
  long stride = 1;

  static StepPlan make(double t_final, double dt, long stride);
  std::vector<long> sample_steps() const;
};

/// I(t) = mean over the circle of |a(t)|^2. Data-parallel over particles.
ActionSeries ensemble_mean_action(const Params& p, const CircleEnsemble& ens, double t_final,
                                  double dt, long stride, int threads = 0);

/// Row-wise mean of a (samples x particles) matrix with pairwise summation.
std::vector<double> row_means(const MatrixXd& samples);

// ---------------------------------------------------------------------------
// Critical frequencies

struct CriticalFrequencies {
  std::optional<double> nu1;
  std::optional<double> nu2;
  std::optional<double> nu3_classical;
};

/// nu1 and nu2 from the saddle-node scan; nu3 by bisection of the sign of
/// (outer - inner) basin fraction on `grid`, down to `nu3_tol`.
CriticalFrequencies critical_frequencies(const Params& p, const FrequencyScan& scan,
                                         const BasinGridConfig& grid, double nu3_tol = 5e-3);

}  // namespace kerr
