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

// Spectral analysis of the rotating-frame Lindbladian as an N^2 x N^2 matrix
// acting on column-stacked density matrices, vec(rho)_{n + N m} = rho_{n m}.

#pragma once

#include "kerr/eigensolver.hpp"
#include "kerr/fock.hpp"

#include <utility>
#include <vector>

namespace kerr {

/// Dense N^2 x N^2 Liouvillian.
using LiouvillianMatrix = MatrixXc;

inline constexpr Index kDefaultMaxDenseDim = 40;

VectorXc vectorize(const MatrixXc& rho);
MatrixXc devectorize(const VectorXc& v, Index n);

/// Assembled from Kronecker products,
///   L = -i (1 (x) H - H^T (x) 1) + gamma (a* (x) a) - gamma/2 (1 (x) n + n^T (x) 1),
/// using vec(A X B) = (B^T (x) A) vec(X). Throws BudgetExceeded for N > max_dim.
LiouvillianMatrix build_liouvillian(const Params& p, Index n, Index max_dim = kDefaultMaxDenseDim);

struct SpectrumOptions {
  EigenBackend backend = EigenBackend::kAuto;
  double zero_mode_rel_tol = 1e-8;  // |lambda| < tol * max|lambda| is a zero mode
  double residual_rel_tol = 1e-8;   // ||L v - lambda v|| < tol * max|lambda|
};

/// First k Liouvillian eigenpairs, sorted by |Re lambda| ascending with
/// ties broken by |Im lambda| and then by Im lambda > 0 first.
struct SpectralDecomposition {
  Index dim = 0;  // N
  VectorXc eigenvalues;
  std::vector<MatrixXc> right_modes;  // rho^(j)
  MatrixXc left;                      // row j: biorthogonal dual of vec(rho^(j))
  double spectral_radius = 0.0;       // max |lambda| over the full spectrum
  double zero_tol = 0.0;

  const MatrixXc& steady_state() const { return right_modes.at(0); }
  const MatrixXc& metastable_mode() const { return right_modes.at(1); }

  /// Expansion coefficient c_j = <w_j, vec(rho)>.
  Complex coefficient(Index j, const MatrixXc& rho) const;
};

/// rho^(0) is trace-normalised. rho^(1) is scaled so that sum_n |rho^(1)_nn| = 1
/// with its overall phase chosen to make the diagonal real and
/// sum_n rho^(0)_nn rho^(1)_nn <= 0, i.e. its positive lobe sits on the
/// attractor that the steady state depopulates. Left rows are rescaled to
/// stay biorthogonal.
SpectralDecomposition spectrum(const LiouvillianMatrix& l, Index k,
                               const SpectrumOptions& opts = {});

/// Sorted eigenvalues only (no vectors); what frequency sweeps need.
VectorXc liouvillian_eigenvalues(const LiouvillianMatrix& l, Index k,
                                 EigenBackend backend = EigenBackend::kAuto);

/// Sorting permutation used by spectrum().
std::vector<Index> spectral_order(const VectorXc& values);

/// tau = 2 pi / |Re lambda_1|. DegenerateSpectrum if |Re lambda_1| is below
/// the zero-mode tolerance.
double lifetime(const SpectralDecomposition& sd);

/// rho^(0) + c_1 e^{lambda_1 t} rho^(1), with c_1 from the left projection of rho0.
MatrixXc two_mode_reconstruction(const SpectralDecomposition& sd, const MatrixXc& rho0, double t);

/// sum_j c_j e^{lambda_j t} rho^(j) over every stored mode.
MatrixXc mode_reconstruction(const SpectralDecomposition& sd, const MatrixXc& rho0, double t);

struct ModeDiagonals {
  VectorXd steady;      // diag rho^(0)
  VectorXd metastable;  // diag rho^(1)
};

ModeDiagonals mode_diagonals(const SpectralDecomposition& sd);

/// Sums of diag rho^(1) below and at/above n_split.
struct LobeWeights {
  double inner = 0.0;
  double outer = 0.0;
};

LobeWeights lobe_weights(const VectorXd& diagonal, double n_split);

struct SpectrumSweepPoint {
  double nu;
  VectorXc eigenvalues;  // first k, sorted
};

std::vector<SpectrumSweepPoint> spectrum_sweep(const Params& p, Index n,
                                               const std::vector<double>& nus, Index k,
                                               EigenBackend backend = EigenBackend::kAuto,
                                               int threads = 1);

}  // namespace kerr
