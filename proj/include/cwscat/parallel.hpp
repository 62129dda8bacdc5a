//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file cwscat/parallel.hpp
//! \brief Deterministic index-parallel loop.
//!
//! Workers pull indices from an atomic counter and write results into
//! caller-owned slots keyed by index; any reduction over the slots is then
//! performed sequentially in index order by the caller. Results are therefore
//! bit-identical for every thread count, including 1.
//----------------------------------------------------------------------------//
#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace cwscat
{

//! Resolve a user thread-count request: 0 means "auto" (hardware threads).
inline int resolve_threads(int requested)
{
    if (requested > 0)
    {
        return requested;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

//! Run fn(i) for i in [0, n) on the given number of threads.
//!
//! fn must only write to state owned by index i. The first exception thrown
//! by any worker is rethrown on the calling thread after all workers join.
inline void
parallel_for(std::int64_t n, int threads, std::function<void(std::int64_t)> const& fn)
{
    threads = resolve_threads(threads);
    if (n <= 0)
    {
        return;
    }
    if (threads <= 1 || n == 1)
    {
        for (std::int64_t i = 0; i < n; ++i)
        {
            fn(i);
        }
        return;
    }

    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;)
        {
            std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n || failed.load(std::memory_order_relaxed))
            {
                return;
            }
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                {
                    first_error = std::current_exception();
                }
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    int count = static_cast<int>(std::min<std::int64_t>(threads, n));
    pool.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t)
    {
        pool.emplace_back(worker);
    }
    for (auto& th : pool)
    {
        th.join();
    }
    if (first_error)
    {
        std::rethrow_exception(first_error);
    }
}

}  // namespace cwscat
