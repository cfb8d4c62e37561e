// Copyright 2026 The pmlkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PMLKIT_PARALLEL_H_
#define PMLKIT_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace pmlkit {

// Thread cap from PMLKIT_THREADS; 0, unset or unparsable means one thread per
// hardware core.
inline unsigned ThreadsFromEnv() {
  unsigned threads = 0;
  if (const char* env = std::getenv("PMLKIT_THREADS")) {
    try {
      threads = static_cast<unsigned>(std::stoul(env));
    } catch (...) {
      threads = 0;
    }
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return threads;
}

// Calls fn(i) for every i in [0, n). Each index is visited exactly once; fn
// must write only to storage owned by index i.
template <typename Fn>
void ParallelFor(std::size_t n, unsigned threads, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&fn, n, w, workers] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
}

}  // namespace pmlkit

#endif  // PMLKIT_PARALLEL_H_
