#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace troppatch {

// Thread cap from TROPPATCH_THREADS (default 1).
inline int thread_cap() {
    const char* v = std::getenv("TROPPATCH_THREADS");
    if (!v) return 1;
    int n = std::atoi(v);
    return n < 1 ? 1 : n;
}

// Index-parallel loop over immutable inputs; results must be written to
// per-index slots so the output is identical at any thread count.
template <typename F>
void parallel_for(int n, F&& fn) {
    int threads = std::min(thread_cap(), n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace troppatch
