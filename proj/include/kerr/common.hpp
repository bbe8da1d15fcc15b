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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kerr {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;
using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class ErrorKind {
  kInvalidArgument,
  kDegenerateRoots,
  kNotAFixedPoint,
  kNonFinite,
  kNotBracketed,
  kNotBistable,
  kTruncationBreach,
  kBudgetExceeded,
  kEigensolverFailure,
  kDegenerateSpectrum,
  kConfig,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure surfaced by the library carries a kind so that callers (the
// CLI in particular) can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Axis-aligned rectangle in the complex plane (Re, Im).
struct GridBounds {
  double re_min = -10.0;
  double re_max = 10.0;
  double im_min = -10.0;
  double im_max = 10.0;

  bool operator==(const GridBounds&) const = default;
};

template <typename Scalar>
bool all_finite(const Eigen::DenseBase<Scalar>& m) {
  return m.derived().allFinite();
}

}  // namespace kerr
