// Copyright 2026 The magicrm Authors
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

#ifndef MAGICRM_PARALLEL_HPP
#define MAGICRM_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace magicrm {

namespace detail {
inline thread_local bool inside_worker = false;
inline std::atomic<unsigned> default_threads{0};
}  // namespace detail

/// Worker count used when parallel_for is not given one (0 = hardware).
inline void set_thread_count(unsigned threads) { detail::default_threads = threads; }

/// Calls f(i) for i in [0, count) on up to `threads` workers (0 = hardware).
/// Callers write results by index, so output never depends on scheduling.
/// Nested calls from a worker run serially.
template <class F>
void parallel_for(size_t count, F&& f, unsigned threads = 0) {
    if (threads == 0) threads = detail::default_threads;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<size_t>(threads, count));
    if (detail::inside_worker) threads = 1;
    if (threads <= 1) {
        for (size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            detail::inside_worker = true;
            for (size_t i = next++; i < count; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace magicrm

#endif
