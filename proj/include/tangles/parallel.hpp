#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tangles {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs f(i) for i in [begin, end) on up to `threads` workers.  Work items
// must be independent; determinism is the caller's responsibility (write to
// disjoint slots, never accumulate shared floats).  The first exception
// thrown by any worker is rethrown on the calling thread.
template <typename F>
void parallel_for(int64_t begin, int64_t end, int threads, F&& f) {
    const int64_t count = end - begin;
    if (count <= 0) return;
    threads = static_cast<int>(std::min<int64_t>(resolve_threads(threads), count));
    if (threads <= 1) {
        for (int64_t i = begin; i < end; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const int64_t chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int64_t lo = begin + t * chunk;
        const int64_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f, &first_error, &error_mutex] {
            try {
                for (int64_t i = lo; i < hi; ++i) f(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace tangles
