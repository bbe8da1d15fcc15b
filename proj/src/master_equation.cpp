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

#include "kerr/master_equation.hpp"

#include <algorithm>
#include <cmath>

namespace kerr {

namespace {

// Gershgorin-type bound on the generator's spectral radius. The Kerr term
// makes it grow like g N^2, so a fixed dt loses RK4 stability at large N.
double generator_radius(const Params& p, Index n) {
  const VectorXd e = hamiltonian_diagonal(p, n);
  const double spread = e.maxCoeff() - e.minCoeff();
  const double top = static_cast<double>(n - 1);
  return spread + p.gamma * top + 4 * std::abs(p.epsilon) * std::sqrt(top);
}

// RK4 is stable on the imaginary axis up to 2 sqrt(2); keep a margin.
constexpr double kRk4StableStep = 2.5;

}  // namespace

void propagate_density(const Params& p, const DensityMatrix& rho0, double t_final, double dt,
                       long stride, const DensityObserver& observe, double tail_limit) {
  p.validate();
  if (rho0.rows() != rho0.cols() || rho0.rows() < 2)
    throw Error(ErrorKind::kInvalidArgument, "rho0 must be square with N >= 2");
  if (!(dt > 0)) throw Error(ErrorKind::kInvalidArgument, "dt must be positive");
  if (!(t_final >= 0)) throw Error(ErrorKind::kInvalidArgument, "t_final must be >= 0");
  if (stride < 1) throw Error(ErrorKind::kInvalidArgument, "stride must be >= 1");

  const LindbladGenerator<double> lindblad(p, rho0.rows());
  const long n_steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
  const double h = n_steps > 0 ? t_final / static_cast<double>(n_steps) : dt;
  const Index n = rho0.rows();
  const long substeps =
      std::max(1L, static_cast<long>(std::ceil(h * generator_radius(p, n) / kRk4StableStep)));
  const double hs = h / static_cast<double>(substeps);

  auto check = [&](long step, const DensityMatrix& rho) {
    if (!rho.allFinite())
      throw Error(ErrorKind::kNonFinite, "density matrix overflow at step " + std::to_string(step));
    const double tail = std::abs(rho(n - 1, n - 1));
    if (tail > tail_limit) {
      throw Error(ErrorKind::kTruncationBreach,
                  "tail population " + std::to_string(tail) + " at step " + std::to_string(step) +
                      " exceeds " + std::to_string(tail_limit) + "; increase N");
    }
  };

  DensityMatrix rho = rho0;
  DensityMatrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), tmp(n, n);
  check(0, rho);
  observe(0, 0.0, rho);
  for (long step = 1; step <= n_steps; ++step) {
    for (long sub = 0; sub < substeps; ++sub) {
      lindblad.apply(rho, k1);
      tmp = rho + (hs / 2) * k1;
      lindblad.apply(tmp, k2);
      tmp = rho + (hs / 2) * k2;
      lindblad.apply(tmp, k3);
      tmp = rho + hs * k3;
      lindblad.apply(tmp, k4);
      rho += (hs / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (step % stride == 0 || step == n_steps) {
      check(step, rho);
      observe(step, h * static_cast<double>(step), rho);
    }
  }
}

DensityEvolution evolve_density_matrix(const Params& p, const DensityMatrix& rho0, double t_final,
                                       double dt, long stride) {
  DensityEvolution out;
  propagate_density(p, rho0, t_final, dt, stride, [&](long, double t, const DensityMatrix& rho) {
    out.times.push_back(t / p.period());
    out.states.push_back(rho);
  });
  return out;
}

OccupationSeries evolve_occupation(const Params& p, const DensityMatrix& rho0, double t_final,
                                   double dt, long stride) {
  OccupationSeries out;
  propagate_density(p, rho0, t_final, dt, stride, [&](long, double t, const DensityMatrix& rho) {
    out.times.push_back(t / p.period());
    out.values.push_back(occupation(rho));
  });
  return out;
}

}  // namespace kerr
