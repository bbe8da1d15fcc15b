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

// Truncated Fock-basis representation of the quantum Kerr oscillator.
//
// In the frame rotating with the drive the Hamiltonian is time independent,
//   H = Delta n + (g/2) n^2 + epsilon (a + a^dagger),
// and the master equation is
//   d rho/dt = -i [H, rho] - (gamma/2) (n rho - 2 a rho a^dagger + rho n).

#pragma once

#include "kerr/common.hpp"
#include "kerr/params.hpp"

#include <cmath>
#include <vector>

namespace kerr {

template <typename Real>
using MatrixC = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using VectorC = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using VectorR = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Dense ladder operators on span{|0>, ..., |N-1>}.
template <typename Real>
struct FockOperators {
  Index dim = 0;
  MatrixC<Real> lowering;  // sqrt(n) on the first superdiagonal
  MatrixC<Real> raising;
  MatrixC<Real> number;

  explicit FockOperators(Index n) : dim(n) {
    if (n < 1) throw Error(ErrorKind::kInvalidArgument, "Fock dimension must be >= 1");
    lowering = MatrixC<Real>::Zero(n, n);
    for (Index k = 1; k < n; ++k) lowering(k - 1, k) = std::sqrt(Real(k));
    raising = lowering.adjoint();
    number = MatrixC<Real>::Zero(n, n);
    number.diagonal() = VectorR<Real>::LinSpaced(n, Real(0), Real(n - 1)).template cast<std::complex<Real>>();
  }
};

/// sqrt(k+1) for k = 0..N-2: the nonzero entries of a, shifted to row 0.
template <typename Real>
VectorR<Real> ladder_weights(Index n) {
  VectorR<Real> w(std::max<Index>(n - 1, 0));
  for (Index k = 0; k + 1 < n; ++k) w(k) = std::sqrt(Real(k + 1));
  return w;
}

/// Diagonal of the rotating-frame Hamiltonian, Delta n + (g/2) n^2.
template <typename Real>
VectorR<Real> hamiltonian_diagonal(const OscillatorParams<Real>& p, Index n) {
  VectorR<Real> d(n);
  for (Index k = 0; k < n; ++k) {
    const Real nk = Real(k);
    d(k) = p.detuning() * nk + p.g / Real(2) * nk * nk;
  }
  return d;
}

template <typename Real>
MatrixC<Real> build_hamiltonian_rotating(const OscillatorParams<Real>& p, Index n) {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "Hamiltonian needs N >= 2");
  MatrixC<Real> h = MatrixC<Real>::Zero(n, n);
  h.diagonal() = hamiltonian_diagonal(p, n).template cast<std::complex<Real>>();
  const VectorR<Real> w = ladder_weights<Real>(n);
  h.diagonal(1) = (p.epsilon * w).template cast<std::complex<Real>>();
  h.diagonal(-1) = h.diagonal(1);
  return h;
}

/// Rotating-frame Lindblad generator applied without forming dense operator
/// products: every operator is banded, so one application is O(N^2).
template <typename Real>
class LindbladGenerator {
 public:
  LindbladGenerator(const OscillatorParams<Real>& p, Index n)
      : params_(p), dim_(n), diag_(hamiltonian_diagonal(p, n)), weights_(ladder_weights<Real>(n)) {
    if (n < 2) throw Error(ErrorKind::kInvalidArgument, "Lindblad generator needs N >= 2");
    // -i h_n - (gamma/2) n, split per row/column.
    row_coeff_.resize(n);
    for (Index k = 0; k < n; ++k)
      row_coeff_(k) = std::complex<Real>(-p.gamma / Real(2) * Real(k), -diag_(k));
  }

  Index dim() const noexcept { return dim_; }
  const OscillatorParams<Real>& params() const noexcept { return params_; }

  void apply(const MatrixC<Real>& rho, MatrixC<Real>& out) const {
    const Index n = dim_;
    const Index m = n - 1;
    const std::complex<Real> minus_i_eps(0, -params_.epsilon);
    const auto w = weights_.asDiagonal();

    // Diagonal parts: (-i h_n - gamma n/2) rho_nm + rho_nm (i h_m - gamma m/2).
    out = row_coeff_.asDiagonal() * rho;
    out.noalias() += rho * row_coeff_.conjugate().asDiagonal();

    // -i eps (a + a^dagger) rho
    out.topRows(m).noalias() += minus_i_eps * (w * rho.bottomRows(m));
    out.bottomRows(m).noalias() += minus_i_eps * (w * rho.topRows(m));
    // +i eps rho (a + a^dagger)
    out.rightCols(m).noalias() -= minus_i_eps * (rho.leftCols(m) * w);
    out.leftCols(m).noalias() -= minus_i_eps * (rho.rightCols(m) * w);

    // gamma a rho a^dagger
    out.topLeftCorner(m, m).noalias() += params_.gamma * (w * rho.bottomRightCorner(m, m) * w);
  }

  MatrixC<Real> operator()(const MatrixC<Real>& rho) const {
    MatrixC<Real> out(dim_, dim_);
    apply(rho, out);
    return out;
  }

 private:
  OscillatorParams<Real> params_;
  Index dim_;
  VectorR<Real> diag_;
  VectorR<Real> weights_;
  VectorC<Real> row_coeff_;
};

template <typename Real>
MatrixC<Real> lindblad_rhs(const OscillatorParams<Real>& p, const MatrixC<Real>& rho) {
  return LindbladGenerator<Real>(p, rho.rows())(rho);
}

// ---------------------------------------------------------------------------
// States and observables

using DensityMatrix = MatrixXc;

template <typename Real = double>
MatrixC<Real> fock_density(Index n0, Index n) {
  if (n0 < 0 || n0 >= n) throw Error(ErrorKind::kTruncationBreach, "Fock index outside truncation");
  MatrixC<Real> rho = MatrixC<Real>::Zero(n, n);
  rho(n0, n0) = Real(1);
  return rho;
}

/// Tr[a^dagger a rho]. The imaginary residue of a Hermitian rho is dropped.
template <typename Derived>
typename Derived::RealScalar occupation(const Eigen::MatrixBase<Derived>& rho) {
  using Real = typename Derived::RealScalar;
  Real n = 0;
  for (Index k = 0; k < rho.rows(); ++k) n += Real(k) * std::real(rho(k, k));
  return n;
}

/// Components exp(-|alpha|^2/2) alpha^n / sqrt(n!) for n < N, without
/// renormalising the truncated vector.
template <typename Real>
VectorC<Real> coherent_components(std::complex<Real> alpha, Index n) {
  VectorC<Real> c(n);
  if (n == 0) return c;
  c(0) = std::exp(-std::norm(alpha) / Real(2));
  for (Index k = 1; k < n; ++k) c(k) = c(k - 1) * alpha / std::sqrt(Real(k));
  return c;
}

/// Glauber state |alpha> truncated to N levels. Throws TruncationBreach if
/// the probability beyond N exceeds `tail_tol`.
template <typename Real>
VectorC<Real> coherent_state(std::complex<Real> alpha, Index n, Real tail_tol = Real(1e-10)) {
  VectorC<Real> c = coherent_components(alpha, n);
  const Real tail = Real(1) - c.squaredNorm();
  if (tail > tail_tol) {
    throw Error(ErrorKind::kTruncationBreach,
                "coherent state |alpha|^2 = " + std::to_string(static_cast<double>(std::norm(alpha))) +
                    " leaks " + std::to_string(static_cast<double>(tail)) + " beyond N = " +
                    std::to_string(n));
  }
  return c;
}

struct DensityDiagnostics {
  double hermiticity = 0.0;   // max |rho - rho^dagger|
  double trace_error = 0.0;   // |Tr rho - 1|
  double min_eigenvalue = 0.0;
  double tail = 0.0;          // rho_{N-1,N-1}
};

/// Checks the invariants of a physical density matrix. The eigenvalue check
/// is O(N^3) and only runs when `with_spectrum` is set.
DensityDiagnostics diagnose(const DensityMatrix& rho, bool with_spectrum = true);

struct HusimiGrid {
  GridBounds bounds{-6.0, 6.0, -6.0, 6.0};
  int resolution = 121;  // points per side, including the edges

  Complex point(Index row, Index col) const;
};

struct HusimiField {
  HusimiGrid grid;
  MatrixXd values;  // values(row, col) at grid.point(row, col)
};

/// Q(alpha) = <alpha| rho |alpha> on a rectangular grid. The truncated
/// coherent components reproduce the overlap exactly for a rho supported on
/// N levels; TruncationBreach is raised when rho itself has a heavy tail
/// (rho_{N-1,N-1} > 1e-6), which would make the field meaningless.
HusimiField husimi(const DensityMatrix& rho, const HusimiGrid& grid, int threads = 0);

}  // namespace kerr
