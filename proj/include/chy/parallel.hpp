#pragma once

// Index-based parallel loop for independent trials.  Results are written to
// per-index slots, so the assembled output does not depend on the thread
// count.  CHYLAB_THREADS caps the worker count.

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace chy {

inline int max_threads() {
    int hw = (int)std::thread::hardware_concurrency();
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("CHYLAB_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < hw) hw = cap;
    }
    return hw;
}

template <class Fn>
void parallel_for(int count, Fn&& fn, int threads = 0) {
    if (threads <= 0) threads = max_threads();
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace chy
