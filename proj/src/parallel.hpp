#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ot1d::detail {

inline int env_threads() {
    const char* v = std::getenv("OT1D_THREADS");
    if (!v || !*v) return 0;
    int t = std::atoi(v);
    return t < 0 ? 0 : t;
}

// Static range split across OT1D_THREADS workers; serial when 0 or 1.
// Deterministic: fn(i) writes only to slot i of caller-owned storage.
inline void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    threads = std::min({threads, count, static_cast<int>(std::thread::hardware_concurrency())});
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < count; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace ot1d::detail
