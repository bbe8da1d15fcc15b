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

// Truncated-Wigner (pseudo-classical) dynamics: the classical rotating-frame
// flow driven by complex white noise xi with <xi*(t) xi(t')> = 2 delta(t - t'),
//
//   i db/dt = (Delta + g|b|^2) b + epsilon - i (gamma/2) b + sqrt(gamma (2 nbar + 1) / 4) xi(t).
//
// The third-order derivative term of the Wigner-function equation is dropped.

#pragma once

#include "kerr/basin.hpp"
#include "kerr/classical.hpp"

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

namespace kerr {

// Both schemes add the same kick D sqrt(dt) (eta1 + i eta2) after the drift
// update. Plain Euler drift inflates the rotation, |1 + f dt|^2 > 1 - gamma dt,
// which biases the stationary action upward by about Delta^2 dt / gamma (3% at
// the reference parameters with dt = T/200). The RK4 drift removes that bias
// at the same weak order and coincides with the classical integrator when the
// noise vanishes.
enum class DriftScheme {
  kEuler,
  kRk4,
};

struct LangevinConfig {
  double dt = kTwoPi / 200.0;
  int n_traj = 1000;
  double nbar = 0.0;
  std::uint64_t seed = 1;
  std::variant<CircleEnsemble, Complex> initial = Complex(0.0, 0.0);
  bool noise_enabled = true;
  DriftScheme drift = DriftScheme::kRk4;
  int threads = 0;

  void validate() const;
  Complex initial_state(Index traj) const;
};

/// sqrt(gamma (2 nbar + 1) / 4).
inline double noise_amplitude(const Params& p, double nbar) {
  return std::sqrt(p.gamma * (2.0 * nbar + 1.0) / 4.0);
}

/// One Euler-Maruyama step: b + f(b) dt + D sqrt(dt) (eta1 + i eta2) with
/// independent standard normals, so the complex increment has variance 2 D^2 dt.
inline Complex langevin_step(const Params& p, Complex b, double dt, double amplitude, double eta1,
                             double eta2) {
  return b + eom_rotating_frame(p, b) * dt + amplitude * std::sqrt(dt) * Complex(eta1, eta2);
}

/// Independent normal stream for one trajectory, derived from (seed, index)
/// only, so results do not depend on scheduling.
class TrajectoryRng {
 public:
  TrajectoryRng(std::uint64_t seed, std::uint64_t index);
  double normal() { return normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// <|a(t)|^2> over trajectories, with standard errors. Worker-count invariant.
ActionSeries run_ensemble(const Params& p, const LangevinConfig& cfg, double t_final, long stride);

struct EscapeStatistics {
  std::vector<double> times;     // units of T
  std::vector<double> survival;  // fraction not yet escaped
  int events = 0;
  double exposure = 0.0;         // summed time at risk, natural units
  double rate = 0.0;             // per natural time unit
  bool rate_is_upper_bound = false;
};

inline constexpr int kMinEscapeEvents = 50;

/// Starts every trajectory on the stable root `start` and records first
/// passages into the other basin. Membership is decided every `check_every`
/// (natural units): a trajectory within a quarter of the root-saddle distance
/// of its start is inside; otherwise a noiseless copy is relaxed for
/// 5 T_gamma and labelled by root proximity. The rate is the censored
/// exponential maximum-likelihood estimate events / exposure. With fewer than
/// 50 events it is replaced by the upper bound (events + 3) / exposure and
/// flagged.
EscapeStatistics escape_statistics(const Params& p, const LangevinConfig& cfg, BasinLabel start,
                                   double t_final, double check_every);

}  // namespace kerr
