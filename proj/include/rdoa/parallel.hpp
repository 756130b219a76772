// SPDX-License-Identifier: Apache-2.0
//
// rdoa - covariance-fitting direction-of-arrival estimation on HPD geometry
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace rdoa
{

/// Worker count: RDOA_THREADS when set (minimum 1), else the hardware
/// concurrency.
inline unsigned worker_count()
{
    if (const char *env = std::getenv("RDOA_THREADS"))
    {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1)
            return static_cast<unsigned>(n);
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

namespace detail
{
inline thread_local bool in_parallel_region = false;
}

/// Run fn(i) for i in [0, n). Each index writes only its own output slot,
/// so results do not depend on the worker count. Nested calls from inside
/// a worker run serially. The first exception thrown by any worker is
/// rethrown on the calling thread.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn)
{
    const unsigned workers = std::min<std::size_t>(worker_count(), n > 0 ? n : 1);
    if (workers <= 1 || detail::in_parallel_region)
    {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
    {
        pool.emplace_back([&, w]() {
            detail::in_parallel_region = true;
            for (std::size_t i = w; i < n; i += workers)
            {
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace rdoa
