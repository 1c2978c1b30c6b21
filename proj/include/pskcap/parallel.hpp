// SPDX-License-Identifier: Apache-2.0
//
// pskcap - capacity of hard-decision detected PSK in the low-SNR regime
// Copyright (C) 2026 The pskcap Authors
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

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pskcap
{

// Hardware concurrency, capped by the PSKCAP_THREADS environment variable.
unsigned worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads. Tasks are
// handed out in index order; the first exception is rethrown after joining.
template <class Body>
void parallel_for(std::size_t n, Body &&body)
{
    const unsigned workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::mutex lock;
    std::size_t next = 0;
    std::exception_ptr failure;
    auto run = [&] {
        for (;;)
        {
            std::size_t i;
            {
                std::lock_guard<std::mutex> g(lock);
                if (next >= n || failure)
                    return;
                i = next++;
            }
            try
            {
                body(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> g(lock);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(run);
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace pskcap
