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

#include "kerr/fock.hpp"

#include <functional>
#include <vector>

namespace kerr {

/// Called at every sample: step index, time (natural units), state.
using DensityObserver = std::function<void(long, double, const DensityMatrix&)>;

/// Fixed-step RK4 integration of the rotating-frame master equation. The
/// step is shrunk to t_final / ceil(t_final / dt), and split further into
/// substeps when a bound on the generator's spectral radius would put it
/// outside the RK4 stability region. At every sample the tail
/// population rho_{N-1,N-1} is checked against `tail_limit`
/// (TruncationBreach) and the state against overflow (NonFinite).
void propagate_density(const Params& p, const DensityMatrix& rho0, double t_final, double dt,
                       long stride, const DensityObserver& observe, double tail_limit = 1e-6);

struct DensityEvolution {
  std::vector<double> times;  // units of T = 2 pi / omega
  std::vector<DensityMatrix> states;
};

DensityEvolution evolve_density_matrix(const Params& p, const DensityMatrix& rho0, double t_final,
                                       double dt, long stride);

struct OccupationSeries {
  std::vector<double> times;  // units of T
  std::vector<double> values;
};

/// n(t) = Tr[a^dagger a rho(t)] without keeping the snapshots.
OccupationSeries evolve_occupation(const Params& p, const DensityMatrix& rho0, double t_final,
                                   double dt, long stride);

}  // namespace kerr
