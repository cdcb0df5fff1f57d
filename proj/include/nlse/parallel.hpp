// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The nlse-comb Authors

#pragma once

#include <cstddef>
#include <functional>

namespace nlse {

/// Worker count: `requested` if positive, else NLSE_THREADS, else the number
/// of hardware threads. Never below 1.
int worker_count(int requested = 0);

/// Run fn(i) for i in [0, n) on a pool of worker_count(threads) threads. The
/// first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads = 0);

}  // namespace nlse
