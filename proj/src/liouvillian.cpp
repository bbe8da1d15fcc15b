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

#include "kerr/liouvillian.hpp"

#include "kerr/parallel.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kerr {

VectorXc vectorize(const MatrixXc& rho) {
  return Eigen::Map<const VectorXc>(rho.data(), rho.size());
}

MatrixXc devectorize(const VectorXc& v, Index n) {
  if (v.size() != n * n) throw Error(ErrorKind::kInvalidArgument, "vector length is not N^2");
  return Eigen::Map<const MatrixXc>(v.data(), n, n);
}

LiouvillianMatrix build_liouvillian(const Params& p, Index n, Index max_dim) {
  p.validate();
  if (n > max_dim) {
    throw Error(ErrorKind::kBudgetExceeded,
                "dense Liouvillian for N = " + std::to_string(n) + " exceeds the cap N <= " +
                    std::to_string(max_dim));
  }
  const FockOperators<double> ops(n);
  const MatrixXc h = build_hamiltonian_rotating(p, n);
  const MatrixXc id = MatrixXc::Identity(n, n);
  const Complex i(0.0, 1.0);

  LiouvillianMatrix l = -i * Eigen::kroneckerProduct(id, h).eval();
  l += i * Eigen::kroneckerProduct(h.transpose(), id).eval();
  l += p.gamma * Eigen::kroneckerProduct(ops.lowering.conjugate(), ops.lowering).eval();
  l -= (p.gamma / 2) * Eigen::kroneckerProduct(id, ops.number).eval();
  l -= (p.gamma / 2) * Eigen::kroneckerProduct(ops.number.transpose(), id).eval();
  return l;
}

std::vector<Index> spectral_order(const VectorXc& values) {
  const double radius = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  const double tol = 1e-10 * std::max(radius, 1.0);
  std::vector<Index> order(values.size());
  std::iota(order.begin(), order.end(), Index{0});

  // Runs of consecutive keys closer than tol count as ties, so a conjugate
  // pair whose |Im| differ in the last bits still orders positive Im first.
  auto tied_runs = [&](std::size_t begin, std::size_t end, auto key) {
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    std::size_t start = begin;
    for (std::size_t i = begin + 1; i <= end; ++i) {
      if (i == end || key(order[i]) - key(order[i - 1]) > tol) {
        runs.emplace_back(start, i);
        start = i;
      }
    }
    return runs;
  };
  auto abs_re = [&](Index j) { return std::abs(values(j).real()); };
  auto abs_im = [&](Index j) { return std::abs(values(j).imag()); };

  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return abs_re(a) < abs_re(b); });
  if (order.empty()) return order;
  for (const auto& [b0, e0] : tied_runs(0, order.size(), abs_re)) {
    std::stable_sort(order.begin() + b0, order.begin() + e0,
                     [&](Index a, Index b) { return abs_im(a) < abs_im(b); });
    for (const auto& [b1, e1] : tied_runs(b0, e0, abs_im)) {
      std::stable_sort(order.begin() + b1, order.begin() + e1,
                       [&](Index a, Index b) { return values(a).imag() > values(b).imag(); });
    }
  }
  return order;
}

Complex SpectralDecomposition::coefficient(Index j, const MatrixXc& rho) const {
  return left.row(j).transpose().cwiseProduct(vectorize(rho)).sum();
}

SpectralDecomposition spectrum(const LiouvillianMatrix& l, Index k, const SpectrumOptions& opts) {
  const Index big = l.rows();
  const Index n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(big))));
  if (n * n != big || l.cols() != big)
    throw Error(ErrorKind::kInvalidArgument, "Liouvillian must be N^2 x N^2");
  if (k < 1 || k > big) throw Error(ErrorKind::kInvalidArgument, "k must lie in [1, N^2]");

  const EigenDecomposition dec = eig_general(l, true, opts.backend);
  const auto order = spectral_order(dec.values);

  SpectralDecomposition sd;
  sd.dim = n;
  sd.spectral_radius = dec.values.cwiseAbs().maxCoeff();
  sd.zero_tol = opts.zero_mode_rel_tol * sd.spectral_radius;

  const Index zero_count = (dec.values.cwiseAbs().array() < sd.zero_tol).count();
  if (zero_count == 0)
    throw Error(ErrorKind::kEigensolverFailure, "no zero eigenvalue found; steady state missing");
  if (zero_count > 1) {
    throw Error(ErrorKind::kDegenerateSpectrum,
                std::to_string(zero_count) + " eigenvalues below the zero-mode tolerance");
  }
  if (!(std::abs(dec.values(order[0])) < sd.zero_tol))
    throw Error(ErrorKind::kEigensolverFailure, "zero mode did not sort first");

  // Rows of V^{-1} are the biorthogonal left eigenvectors.
  Eigen::PartialPivLU<MatrixXc> lu(dec.vectors);
  MatrixXc selectors = MatrixXc::Zero(big, k);
  for (Index j = 0; j < k; ++j) selectors(order[j], j) = 1.0;
  const MatrixXc left_cols = lu.transpose().solve(selectors);
  sd.left = left_cols.transpose();

  sd.eigenvalues.resize(k);
  sd.right_modes.reserve(k);
  for (Index j = 0; j < k; ++j) {
    const Index src = order[j];
    const Complex lambda = dec.values(src);
    const VectorXc v = dec.vectors.col(src);
    const double residual = (l * v - lambda * v).norm();
    if (!(residual < opts.residual_rel_tol * sd.spectral_radius)) {
      throw Error(ErrorKind::kEigensolverFailure,
                  "eigenpair " + std::to_string(j) + " residual " + std::to_string(residual));
    }
    sd.eigenvalues(j) = lambda;
    sd.right_modes.push_back(devectorize(v, n));
  }

  // Steady state: unit trace.
  {
    const Complex tr = sd.right_modes[0].trace();
    sd.right_modes[0] /= tr;
    sd.left.row(0) *= tr;
  }
  if (k >= 2) {
    MatrixXc& mode = sd.right_modes[1];
    Index at = 0;
    mode.diagonal().cwiseAbs().maxCoeff(&at);
    const Complex d_max = mode(at, at);
    Complex scale = std::abs(d_max) > 0 ? d_max / std::abs(d_max) : Complex(1.0);
    mode /= scale;
    const double l1 = mode.diagonal().real().cwiseAbs().sum();
    if (l1 > 0) {
      mode /= l1;
      scale *= l1;
    }
    const double overlap =
        sd.right_modes[0].diagonal().real().dot(mode.diagonal().real());
    if (overlap > 0) {
      mode = -mode;
      scale = -scale;
    }
    sd.left.row(1) *= scale;
  }
  return sd;
}

VectorXc liouvillian_eigenvalues(const LiouvillianMatrix& l, Index k, EigenBackend backend) {
  const EigenDecomposition dec = eig_general(l, false, backend);
  const auto order = spectral_order(dec.values);
  k = std::min<Index>(k, dec.values.size());
  VectorXc out(k);
  for (Index j = 0; j < k; ++j) out(j) = dec.values(order[j]);
  return out;
}

double lifetime(const SpectralDecomposition& sd) {
  if (sd.eigenvalues.size() < 2)
    throw Error(ErrorKind::kInvalidArgument, "lifetime needs at least two modes");
  const double rate = std::abs(sd.eigenvalues(1).real());
  if (!(rate > sd.zero_tol)) {
    throw Error(ErrorKind::kDegenerateSpectrum,
                "|Re lambda_1| = " + std::to_string(rate) + " is not separable from the zero mode");
  }
  return kTwoPi / rate;
}

MatrixXc two_mode_reconstruction(const SpectralDecomposition& sd, const MatrixXc& rho0, double t) {
  if (sd.right_modes.size() < 2)
    throw Error(ErrorKind::kInvalidArgument, "two-mode reconstruction needs k >= 2");
  const Complex c1 = sd.coefficient(1, rho0);
  return sd.steady_state() + c1 * std::exp(sd.eigenvalues(1) * t) * sd.metastable_mode();
}

MatrixXc mode_reconstruction(const SpectralDecomposition& sd, const MatrixXc& rho0, double t) {
  MatrixXc rho = MatrixXc::Zero(sd.dim, sd.dim);
  for (std::size_t j = 0; j < sd.right_modes.size(); ++j) {
    const Index jj = static_cast<Index>(j);
    rho += sd.coefficient(jj, rho0) * std::exp(sd.eigenvalues(jj) * t) * sd.right_modes[j];
  }
  return rho;
}

ModeDiagonals mode_diagonals(const SpectralDecomposition& sd) {
  if (sd.right_modes.size() < 2)
    throw Error(ErrorKind::kInvalidArgument, "mode diagonals need k >= 2");
  return {sd.steady_state().diagonal().real(), sd.metastable_mode().diagonal().real()};
}

LobeWeights lobe_weights(const VectorXd& diagonal, double n_split) {
  LobeWeights w;
  for (Index n = 0; n < diagonal.size(); ++n)
    (static_cast<double>(n) < n_split ? w.inner : w.outer) += diagonal(n);
  return w;
}

std::vector<SpectrumSweepPoint> spectrum_sweep(const Params& p, Index n,
                                               const std::vector<double>& nus, Index k,
                                               EigenBackend backend, int threads) {
  std::vector<SpectrumSweepPoint> out(nus.size());
  parallel_for(static_cast<Index>(nus.size()), threads, [&](Index i) {
    const LiouvillianMatrix l = build_liouvillian(p.with_nu(nus[i]), n);
    out[i] = {nus[i], liouvillian_eigenvalues(l, k, backend)};
  });
  return out;
}

}  // namespace kerr
