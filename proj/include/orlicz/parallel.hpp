// Copyright 2026 The orlicz-lambda Authors
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

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace orlicz {

// Worker count used by parallel_for. Results must not depend on it: every
// task writes to its own index and reductions are folded in index order
// afterwards, so thread count only affects wall time.
inline std::atomic<unsigned>& thread_count_slot() {
  static std::atomic<unsigned> n{0};
  return n;
}

inline unsigned thread_count() {
  unsigned n = thread_count_slot().load(std::memory_order_relaxed);
  if (n > 0) return n;
  if (const char* env = std::getenv("ORLICZ_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

inline void set_thread_count(unsigned n) { thread_count_slot().store(n); }

// Runs fn(i) for i in [0, n) on a shared atomic work queue. Exceptions are
// captured and the first one rethrown on the caller.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (n == 0) return;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace orlicz
