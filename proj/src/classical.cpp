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

#include "kerr/classical.hpp"

namespace kerr {

SaddleNodeWindow saddle_node_window(const Params& p, const FrequencyScan& scan,
                                    double bisection_tol) {
  if (scan.n_points < 2 || !(scan.nu_max > scan.nu_min) || !(scan.nu_min > 0))
    throw Error(ErrorKind::kInvalidArgument, "frequency scan needs nu_max > nu_min > 0, n >= 2");

  auto count_at = [&](double nu) { return real_root_count(p.with_nu(nu)); };
  auto refine = [&](double lo, double hi) {
    const int count_lo = count_at(lo);
    while (hi - lo > bisection_tol) {
      const double mid = 0.5 * (lo + hi);
      (count_at(mid) == count_lo ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  SaddleNodeWindow window;
  const double step = (scan.nu_max - scan.nu_min) / (scan.n_points - 1);
  double prev_nu = scan.nu_min;
  int prev_count = count_at(prev_nu);
  for (int i = 1; i < scan.n_points; ++i) {
    const double nu = scan.nu_min + step * i;
    const int count = count_at(nu);
    if (count != prev_count) {
      const double edge = refine(prev_nu, nu);
      if (prev_count == 1 && !window.nu1) window.nu1 = edge;
      if (prev_count == 3 && !window.nu2) window.nu2 = edge;
    }
    prev_nu = nu;
    prev_count = count;
  }
  if (!window.nu1 && !window.nu2) {
    throw Error(ErrorKind::kNotBracketed,
                "root count never changes in [" + std::to_string(scan.nu_min) + ", " +
                    std::to_string(scan.nu_max) + "]");
  }
  return window;
}

}  // namespace kerr
