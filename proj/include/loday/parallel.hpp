/* Copyright 2026 The Loday Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */
 // Block-level parallelism with deterministic result placement.

#ifndef LODAY_PARALLEL_HPP
#define LODAY_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace loday {

    // Worker count: LODAY_THREADS if set to a positive integer, else the
    // hardware concurrency.
    inline unsigned thread_count() {
        if (const char* env = std::getenv("LODAY_THREADS")) {
            try {
                int n = std::stoi(env);
                if (n > 0) return static_cast<unsigned>(n);
            } catch (const std::exception&) {
            }
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    /* Runs task(i) for i in [0, n). Results must be written to per-index
     * slots by the task; the first exception thrown (by index) is rethrown. */
    template <class Task>
    void parallel_for(std::size_t n, Task&& task) {
        const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
        if (workers <= 1) {
            for (std::size_t i = 0; i < n; ++i) task(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(n);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        task(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

}  // namespace loday

#endif  // LODAY_PARALLEL_HPP
