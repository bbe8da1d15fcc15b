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

#include "kerr/common.hpp"

namespace kerr {

enum class EigenBackend {
  kAuto,     // LAPACKE when compiled in, Eigen otherwise
  kEigen,    // Eigen::ComplexEigenSolver
  kLapacke,  // zgeev; throws if not compiled in
};

bool lapacke_available() noexcept;

/// Unsorted eigenpairs of a general complex matrix. `vectors` holds the
/// right eigenvectors as unit-norm columns (empty when not requested).
struct EigenDecomposition {
  VectorXc values;
  MatrixXc vectors;
};

/// Throws EigensolverFailure if the backend reports non-convergence.
EigenDecomposition eig_general(const MatrixXc& a, bool compute_vectors = true,
                               EigenBackend backend = EigenBackend::kAuto);

}  // namespace kerr
