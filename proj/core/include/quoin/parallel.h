// Copyright 2026 The quoin-factory Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace quoin {

/// Splits `total` units of work into fixed-size shards. The plan depends only
/// on `total` and `shard_size`, never on the number of workers, so shard i
/// always covers the same units and can be keyed by (seed, i).
struct ShardPlan {
  std::uint64_t total = 0;
  std::uint64_t shard_size = 1u << 16;

  std::uint64_t count() const { return total == 0 ? 0 : (total + shard_size - 1) / shard_size; }
  std::uint64_t size(std::uint64_t shard) const { return std::min(shard_size, total - shard * shard_size); }
};

inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) {
    return requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(shard, size) for every shard of `plan` on up to `workers` threads and
/// returns the results indexed by shard. The first exception thrown by any
/// shard is rethrown after all threads have joined.
template <class Fn>
auto run_shards(const ShardPlan& plan, unsigned workers, Fn fn) {
  using Result = decltype(fn(std::uint64_t{}, std::uint64_t{}));
  const std::uint64_t shards = plan.count();
  std::vector<Result> results(shards);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (std::uint64_t i = next++; i < shards; i = next++) {
      try {
        results[i] = fn(i, plan.size(i));
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next = shards;
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), shards));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(work);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return results;
}

}  // namespace quoin
