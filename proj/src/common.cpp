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

#include "kerr/common.hpp"

namespace kerr {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kDegenerateRoots: return "DegenerateRoots";
    case ErrorKind::kNotAFixedPoint: return "NotAFixedPoint";
    case ErrorKind::kNonFinite: return "NonFinite";
    case ErrorKind::kNotBracketed: return "NotBracketed";
    case ErrorKind::kNotBistable: return "NotBistable";
    case ErrorKind::kTruncationBreach: return "TruncationBreach";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kEigensolverFailure: return "EigensolverFailure";
    case ErrorKind::kDegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::kConfig: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace kerr
