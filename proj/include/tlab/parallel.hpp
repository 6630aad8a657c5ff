#pragma once

// Deterministic parallel fill.  Work items are independent writes into
// preallocated storage, so the result is bitwise identical for every thread
// count; TOEPLITZ_LAB_THREADS overrides the hardware default (1 disables
// threading).  Reductions stay serial over the filled array, in index order.

#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace tlab {

inline int thread_count() {
    if (const char* env = std::getenv("TOEPLITZ_LAB_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Calls body(i) for i in [0, n), spread over contiguous blocks.  The first
// exception thrown by any block is rethrown on the calling thread after all
// workers have joined.
inline void parallel_fill(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t threads =
        std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::mutex mutex;
    std::exception_ptr first_error;
    const std::size_t block = (n + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t begin = t * block;
        const std::size_t end = std::min(n, begin + block);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace tlab
