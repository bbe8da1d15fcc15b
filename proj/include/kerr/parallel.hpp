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

#include <algorithm>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace kerr {

/// 0 means "one worker per hardware thread".
inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Runs fn(i) for i in [0, n) over contiguous static chunks. Each index is
/// visited exactly once, so writes to slot i of a preallocated output are
/// race-free and the result does not depend on the worker count. The first
/// exception thrown by any worker is rethrown on the caller's thread.
template <typename Fn>
void parallel_for(Index n, int threads, Fn&& fn) {
  const int workers = static_cast<int>(std::min<Index>(resolve_threads(threads), std::max<Index>(n, 1)));
  if (workers <= 1) {
    for (Index i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const Index chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const Index begin = w * chunk;
    const Index end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (Index i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

/// Pairwise (cascade) summation; fixed association order.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

struct MeanWithError {
  double mean = 0.0;
  double stderr_ = 0.0;  // standard error of the mean
};

inline MeanWithError mean_with_error(std::span<const double> xs) {
  MeanWithError out;
  if (xs.empty()) return out;
  const double n = static_cast<double>(xs.size());
  out.mean = pairwise_sum(xs) / n;
  if (xs.size() > 1) {
    std::vector<double> sq(xs.size());
    std::transform(xs.begin(), xs.end(), sq.begin(),
                   [m = out.mean](double x) { return (x - m) * (x - m); });
    out.stderr_ = std::sqrt(pairwise_sum(sq) / (n - 1.0) / n);
  }
  return out;
}

}  // namespace kerr
