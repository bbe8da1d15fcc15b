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

#include "kerr/fock.hpp"

#include "kerr/parallel.hpp"

namespace kerr {

DensityDiagnostics diagnose(const DensityMatrix& rho, bool with_spectrum) {
  DensityDiagnostics d;
  d.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  d.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  d.tail = rho(rho.rows() - 1, rho.cols() - 1).real();
  if (with_spectrum) {
    const MatrixXc herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = es.eigenvalues().minCoeff();
  }
  return d;
}

Complex HusimiGrid::point(Index row, Index col) const {
  const double denom = resolution > 1 ? static_cast<double>(resolution - 1) : 1.0;
  const double fx = resolution > 1 ? static_cast<double>(col) / denom : 0.5;
  const double fy = resolution > 1 ? static_cast<double>(row) / denom : 0.5;
  return {bounds.re_min + fx * (bounds.re_max - bounds.re_min),
          bounds.im_min + fy * (bounds.im_max - bounds.im_min)};
}

HusimiField husimi(const DensityMatrix& rho, const HusimiGrid& grid, int threads) {
  if (grid.resolution < 1) throw Error(ErrorKind::kInvalidArgument, "Husimi resolution must be >= 1");
  const Index n = rho.rows();
  const double tail = rho(n - 1, n - 1).real();
  if (tail > 1e-6) {
    throw Error(ErrorKind::kTruncationBreach,
                "density matrix tail population " + std::to_string(tail) + " exceeds 1e-6");
  }
  HusimiField field{grid, MatrixXd(grid.resolution, grid.resolution)};
  parallel_for(field.values.size(), threads, [&](Index idx) {
    const Index row = idx / grid.resolution;
    const Index col = idx % grid.resolution;
    const VectorXc c = coherent_components<double>(grid.point(row, col), n);
    field.values(row, col) = c.dot(rho * c).real();
  });
  return field;
}

}  // namespace kerr
