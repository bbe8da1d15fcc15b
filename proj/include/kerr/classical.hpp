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

// Classical mean-field dynamics of the Kerr oscillator in the frame rotating
// with the drive, a = b e^{-i nu t}. In that frame the flow is autonomous:
//
//   i db/dt = (Delta + g|b|^2) b + epsilon - i (gamma/2) b
//
// and limit cycles of the lab frame are fixed points b.

#pragma once

#include "kerr/common.hpp"
#include "kerr/params.hpp"

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace kerr {

template <typename Real>
using ComplexOf = std::complex<Real>;

/// Left-hand side of the stationary amplitude equation,
///   (Delta - i gamma/2) b + g |b|^2 b + epsilon.
template <typename Real>
ComplexOf<Real> root_residual(const OscillatorParams<Real>& p, ComplexOf<Real> b) {
  const ComplexOf<Real> linear(p.detuning(), -p.gamma / Real(2));
  return linear * b + p.g * std::norm(b) * b + p.epsilon;
}

/// db/dt in the rotating frame. Equals -i * root_residual, so it vanishes
/// exactly where the stationary equation does.
template <typename Real>
ComplexOf<Real> eom_rotating_frame(const OscillatorParams<Real>& p, ComplexOf<Real> b) {
  // Spelled out in real arithmetic; this is the innermost loop of every
  // ensemble and basin computation.
  const Real u = b.real(), v = b.imag();
  const Real s = p.detuning() + p.g * (u * u + v * v);
  const Real half_gamma = p.gamma / Real(2);
  return {s * v - half_gamma * u, -s * u - p.epsilon - half_gamma * v};
}

template <typename Real>
ComplexOf<Real> rk4_step(const OscillatorParams<Real>& p, ComplexOf<Real> b, Real dt) {
  const ComplexOf<Real> k1 = eom_rotating_frame(p, b);
  const ComplexOf<Real> k2 = eom_rotating_frame(p, b + (dt / 2) * k1);
  const ComplexOf<Real> k3 = eom_rotating_frame(p, b + (dt / 2) * k2);
  const ComplexOf<Real> k4 = eom_rotating_frame(p, b + dt * k3);
  return b + (dt / 6) * (k1 + Real(2) * k2 + Real(2) * k3 + k4);
}

// ---------------------------------------------------------------------------
// Fixed points

template <typename Real>
struct FixedPoint {
  ComplexOf<Real> b;
  Real action;  // |b|^2
  bool stable;
};

/// Roots of the stationary equation, sorted by ascending action. One root
/// outside the bistable window, three inside it (inner, unstable, outer).
template <typename Real>
struct FixedPointSet {
  std::vector<FixedPoint<Real>> roots;

  std::size_t count() const noexcept { return roots.size(); }
  bool bistable() const noexcept { return roots.size() == 3; }
  const FixedPoint<Real>& inner() const { return roots.front(); }
  const FixedPoint<Real>& outer() const { return roots.back(); }
  const FixedPoint<Real>& saddle() const {
    if (!bistable()) throw Error(ErrorKind::kNotBistable, "no unstable middle root");
    return roots[1];
  }
};

/// Cubic in x = |b|^2:  g^2 x^3 + 2 Delta g x^2 + (Delta^2 + gamma^2/4) x - epsilon^2.
/// Coefficients in ascending order of power.
template <typename Real>
Eigen::Matrix<Real, 4, 1> action_cubic(const OscillatorParams<Real>& p) {
  const Real d = p.detuning();
  Eigen::Matrix<Real, 4, 1> c;
  c << -p.epsilon * p.epsilon, d * d + p.gamma * p.gamma / 4, 2 * d * p.g, p.g * p.g;
  return c;
}

/// Discriminant of the action cubic; positive inside the bistable window.
template <typename Real>
Real action_cubic_discriminant(const OscillatorParams<Real>& p) {
  const auto c = action_cubic(p);
  const Real a = c(3), b = c(2), cc = c(1), d = c(0);
  return 18 * a * b * cc * d - 4 * b * b * b * d + b * b * cc * cc - 4 * a * cc * cc * cc -
         27 * a * a * d * d;
}

/// Number of distinct physical roots (1 or 3), decided by the discriminant.
template <typename Real>
int real_root_count(const OscillatorParams<Real>& p) {
  if (p.g == Real(0) || p.epsilon == Real(0)) return 1;
  return action_cubic_discriminant(p) > Real(0) ? 3 : 1;
}

namespace detail {

template <typename Real>
Real polish_cubic_root(const Eigen::Matrix<Real, 4, 1>& c, Real x) {
  for (int it = 0; it < 50; ++it) {
    const Real f = ((c(3) * x + c(2)) * x + c(1)) * x + c(0);
    const Real df = (3 * c(3) * x + 2 * c(2)) * x + c(1);
    if (df == Real(0)) break;
    const Real step = f / df;
    x -= step;
    if (std::abs(step) <= std::numeric_limits<Real>::epsilon() * std::max(Real(1), std::abs(x)))
      break;
  }
  return x;
}

template <typename Real>
ComplexOf<Real> amplitude_from_action(const OscillatorParams<Real>& p, Real x) {
  // b = -epsilon / (Delta + g x - i gamma/2); fixes the phase uniquely.
  return -p.epsilon / ComplexOf<Real>(p.detuning() + p.g * x, -p.gamma / 2);
}

}  // namespace detail

/// Result of linearising the rotating-frame flow around a fixed point, in
/// (Re b, Im b) coordinates.
template <typename Real>
struct StabilityInfo {
  bool stable;
  std::array<ComplexOf<Real>, 2> jacobian_eigenvalues;
};

template <typename Real>
Eigen::Matrix<Real, 2, 2> flow_jacobian(const OscillatorParams<Real>& p, ComplexOf<Real> b) {
  const Real u = b.real(), v = b.imag();
  const Real s = p.detuning() + p.g * (u * u + v * v);
  const Real half_gamma = p.gamma / 2;
  Eigen::Matrix<Real, 2, 2> j;
  j << 2 * p.g * u * v - half_gamma, s + 2 * p.g * v * v,  //
      -s - 2 * p.g * u * u, -2 * p.g * u * v - half_gamma;
  return j;
}

template <typename Real>
StabilityInfo<Real> stability(const OscillatorParams<Real>& p, ComplexOf<Real> b,
                              Real tol = Real(1e-8)) {
  const Real res = std::abs(root_residual(p, b));
  if (!(res <= tol)) {
    throw Error(ErrorKind::kNotAFixedPoint,
                "residual " + std::to_string(static_cast<double>(res)) + " exceeds tolerance");
  }
  Eigen::EigenSolver<Eigen::Matrix<Real, 2, 2>> es(flow_jacobian(p, b), false);
  const auto ev = es.eigenvalues();
  StabilityInfo<Real> info{ev(0).real() < 0 && ev(1).real() < 0, {ev(0), ev(1)}};
  return info;
}

/// Solves the stationary amplitude equation through the real cubic in the
/// action x = |b|^2 and reconstructs each phase. Throws DegenerateRoots when
/// two roots of the cubic coincide within `tol` (saddle-node points).
template <typename Real>
FixedPointSet<Real> find_fixed_points(const OscillatorParams<Real>& p, Real tol = Real(1e-10)) {
  p.validate();
  if (!(tol > 0)) throw Error(ErrorKind::kInvalidArgument, "tol must be positive");

  std::vector<Real> actions;
  if (p.epsilon == Real(0)) {
    actions.push_back(Real(0));
  } else if (p.g == Real(0)) {
    const Real d = p.detuning();
    actions.push_back(p.epsilon * p.epsilon / (d * d + p.gamma * p.gamma / 4));
  } else {
    const auto c = action_cubic(p);
    Eigen::PolynomialSolver<Real, 3> solver(c);
    const int n_real = real_root_count(p);
    std::vector<Real> candidates;
    for (Index i = 0; i < 3; ++i) candidates.push_back(solver.roots()(i).real());
    std::sort(candidates.begin(), candidates.end());
    if (n_real == 1) {
      // The real root is the candidate with the smallest imaginary part.
      Index best = 0;
      Real best_imag = std::numeric_limits<Real>::infinity();
      for (Index i = 0; i < 3; ++i) {
        if (std::abs(solver.roots()(i).imag()) < best_imag) {
          best_imag = std::abs(solver.roots()(i).imag());
          best = i;
        }
      }
      actions.push_back(detail::polish_cubic_root(c, solver.roots()(best).real()));
    } else {
      for (Real x : candidates) actions.push_back(detail::polish_cubic_root(c, x));
      std::sort(actions.begin(), actions.end());
      for (std::size_t i = 1; i < actions.size(); ++i) {
        if (actions[i] - actions[i - 1] <= tol * std::max(Real(1), actions[i])) {
          throw Error(ErrorKind::kDegenerateRoots,
                      "two roots of the action cubic coincide near nu = " +
                          std::to_string(static_cast<double>(p.nu)));
        }
      }
    }
  }

  FixedPointSet<Real> set;
  for (Real x : actions) {
    const ComplexOf<Real> b =
        p.epsilon == Real(0) ? ComplexOf<Real>(0) : detail::amplitude_from_action(p, x);
    const Real res = std::abs(root_residual(p, b));
    if (!(res < tol)) {
      throw Error(ErrorKind::kDegenerateRoots,
                  "root polish failed, residual " + std::to_string(static_cast<double>(res)));
    }
    const bool stable = stability(p, b, std::max(tol, Real(1e-8))).stable;
    set.roots.push_back({b, std::norm(b), stable});
  }
  std::sort(set.roots.begin(), set.roots.end(),
            [](const auto& l, const auto& r) { return l.action < r.action; });
  return set;
}

/// A root with a single solution is on the upper (outer) branch iff its
/// action exceeds the midpoint of the band where the middle branch lives.
template <typename Real>
bool on_outer_branch(const OscillatorParams<Real>& p, Real action) {
  if (p.g == Real(0)) return true;
  return action > -Real(2) * p.detuning() / (Real(3) * p.g);
}

/// Distance from a root within which a trajectory counts as having reached
/// it: 5% of |b| with an absolute floor of 0.05.
template <typename Real>
Real classification_radius(ComplexOf<Real> root) {
  return std::max(Real(0.05), Real(0.05) * std::abs(root));
}

// ---------------------------------------------------------------------------
// Integration

template <typename Real>
struct Trajectory {
  std::vector<Real> times;
  std::vector<ComplexOf<Real>> points;
};

/// Fixed-step RK4 from b0 to t_final. The step is shrunk to
/// t_final / ceil(t_final / dt) so the last sample lands on t_final.
/// Samples every `stride` steps plus the endpoint.
template <typename Real>
Trajectory<Real> integrate_classical(const OscillatorParams<Real>& p, ComplexOf<Real> b0,
                                     Real t_final, Real dt, long stride = 1) {
  if (!(dt > 0)) throw Error(ErrorKind::kInvalidArgument, "dt must be positive");
  if (!(t_final >= 0)) throw Error(ErrorKind::kInvalidArgument, "t_final must be >= 0");
  if (stride < 1) throw Error(ErrorKind::kInvalidArgument, "stride must be >= 1");
  const long n_steps = static_cast<long>(std::ceil(t_final / dt - Real(1e-9)));
  const Real h = n_steps > 0 ? t_final / Real(n_steps) : dt;

  Trajectory<Real> traj;
  traj.times.push_back(0);
  traj.points.push_back(b0);
  ComplexOf<Real> b = b0;
  for (long step = 1; step <= n_steps; ++step) {
    b = rk4_step(p, b, h);
    if (!std::isfinite(b.real()) || !std::isfinite(b.imag())) {
      throw Error(ErrorKind::kNonFinite,
                  "amplitude overflow at step " + std::to_string(step) + " (dt too large?)");
    }
    if (step % stride == 0 || step == n_steps) {
      traj.times.push_back(h * Real(step));
      traj.points.push_back(b);
    }
  }
  return traj;
}

/// Endpoint-only variant of integrate_classical.
template <typename Real>
ComplexOf<Real> relax(const OscillatorParams<Real>& p, ComplexOf<Real> b0, Real t_final, Real dt) {
  const long n_steps = static_cast<long>(std::ceil(t_final / dt - Real(1e-9)));
  const Real h = n_steps > 0 ? t_final / Real(n_steps) : dt;
  ComplexOf<Real> b = b0;
  for (long step = 0; step < n_steps; ++step) b = rk4_step(p, b, h);
  if (!std::isfinite(b.real()) || !std::isfinite(b.imag()))
    throw Error(ErrorKind::kNonFinite, "amplitude overflow during relaxation");
  return b;
}

// ---------------------------------------------------------------------------
// Saddle-node window

struct FrequencyScan {
  double nu_min = 0.6;
  double nu_max = 2.4;
  int n_points = 181;
};

struct SaddleNodeWindow {
  std::optional<double> nu1;  // lower edge, 1 -> 3 roots
  std::optional<double> nu2;  // upper edge, 3 -> 1 roots
};

/// Locates the edges of the bistable window by scanning the root count and
/// bisecting each 1 <-> 3 transition to `bisection_tol` in nu. Throws
/// NotBracketed if the count never changes inside the scan.
SaddleNodeWindow saddle_node_window(const Params& p, const FrequencyScan& scan,
                                    double bisection_tol = 1e-6);

}  // namespace kerr
