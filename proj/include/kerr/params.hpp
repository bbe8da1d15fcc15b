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

#include <cmath>
#include <sstream>

namespace kerr {

/// Physical constants of the driven, damped Kerr oscillator
///   H = omega a*a + (g/2)(a*a)^2 + epsilon (e^{i nu t} a + e^{-i nu t} a*)
/// with linear friction gamma. Units have hbar = 1.
template <typename Real>
struct OscillatorParams {
  Real omega{1};
  Real g{0};
  Real gamma{0};
  Real epsilon{0};
  Real nu{1};

  /// Delta omega = omega - nu. Always derived, never stored.
  Real detuning() const noexcept { return omega - nu; }

  /// Classical relaxation period T_gamma = 2 pi / gamma.
  Real relaxation_period() const noexcept { return Real(kTwoPi) / gamma; }

  /// Time unit of every exported series, T = 2 pi / omega.
  Real period() const noexcept { return Real(kTwoPi) / omega; }

  OscillatorParams with_nu(Real new_nu) const {
    OscillatorParams copy = *this;
    copy.nu = new_nu;
    return copy;
  }

  bool operator==(const OscillatorParams&) const = default;

  void validate() const {
    using std::isfinite;
    std::ostringstream why;
    if (!(isfinite(omega) && omega > 0)) why << "omega must be finite and > 0; ";
    if (!(isfinite(nu) && nu > 0)) why << "nu must be finite and > 0; ";
    if (!(isfinite(gamma) && gamma >= 0)) why << "gamma must be finite and >= 0; ";
    if (!(isfinite(epsilon) && epsilon >= 0)) why << "epsilon must be finite and >= 0; ";
    if (!isfinite(g)) why << "g must be finite; ";
    if (!why.str().empty()) throw Error(ErrorKind::kInvalidArgument, why.str());
  }
};

using Params = OscillatorParams<double>;

/// omega = 1, g = 0.02, gamma = 0.04, epsilon = 0.16.
inline Params reference_params(double nu = 1.2) {
  return Params{1.0, 0.02, 0.04, 0.16, nu};
}

}  // namespace kerr
