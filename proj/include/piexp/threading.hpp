#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace piexp {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(begin, end) over [0, total) split into contiguous chunks, one per
// worker. fn must be safe to call concurrently on disjoint ranges.
template <class Fn>
void parallel_for(std::size_t total, int threads, Fn&& fn) {
    threads = std::max(1, std::min<int>(threads, static_cast<int>(total ? total : 1)));
    if (threads == 1 || total == 0) {
        if (total) fn(static_cast<std::size_t>(0), total);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + static_cast<std::size_t>(threads) - 1) / static_cast<std::size_t>(threads);
    for (int t = 0; t < threads; ++t) {
        const std::size_t begin = static_cast<std::size_t>(t) * chunk;
        if (begin >= total) break;
        const std::size_t end = std::min(total, begin + chunk);
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace piexp
