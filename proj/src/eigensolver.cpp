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

#include "kerr/eigensolver.hpp"

#ifdef KERR_HAVE_LAPACKE
#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#endif

namespace kerr {

bool lapacke_available() noexcept {
#ifdef KERR_HAVE_LAPACKE
  return true;
#else
  return false;
#endif
}

namespace {

EigenDecomposition eig_with_eigen(const MatrixXc& a, bool compute_vectors) {
  Eigen::ComplexEigenSolver<MatrixXc> es(a, compute_vectors);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::kEigensolverFailure, "ComplexEigenSolver did not converge");
  EigenDecomposition out{es.eigenvalues(), MatrixXc()};
  if (compute_vectors) {
    out.vectors = es.eigenvectors();
    out.vectors.colwise().normalize();
  }
  return out;
}

#ifdef KERR_HAVE_LAPACKE
EigenDecomposition eig_with_lapacke(const MatrixXc& a, bool compute_vectors) {
  const Index n = a.rows();
  MatrixXc work = a;  // zgeev overwrites its input; Eigen storage is column-major
  EigenDecomposition out{VectorXc(n), compute_vectors ? MatrixXc(n, n) : MatrixXc()};
  Complex dummy;
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', compute_vectors ? 'V' : 'N', static_cast<lapack_int>(n), work.data(),
      static_cast<lapack_int>(n), out.values.data(), &dummy, 1,
      compute_vectors ? out.vectors.data() : &dummy, compute_vectors ? static_cast<lapack_int>(n) : 1);
  if (info != 0)
    throw Error(ErrorKind::kEigensolverFailure, "zgeev returned info = " + std::to_string(info));
  if (compute_vectors) out.vectors.colwise().normalize();
  return out;
}
#endif

}  // namespace

EigenDecomposition eig_general(const MatrixXc& a, bool compute_vectors, EigenBackend backend) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::kInvalidArgument, "eig_general needs a square matrix");
  if (!a.allFinite()) throw Error(ErrorKind::kNonFinite, "matrix has non-finite entries");
  switch (backend) {
    case EigenBackend::kEigen:
      return eig_with_eigen(a, compute_vectors);
    case EigenBackend::kLapacke:
#ifdef KERR_HAVE_LAPACKE
      return eig_with_lapacke(a, compute_vectors);
#else
      throw Error(ErrorKind::kInvalidArgument, "built without LAPACKE");
#endif
    case EigenBackend::kAuto:
      break;
  }
#ifdef KERR_HAVE_LAPACKE
  return eig_with_lapacke(a, compute_vectors);
#else
  return eig_with_eigen(a, compute_vectors);
#endif
}

}  // namespace kerr
