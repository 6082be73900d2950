#pragma once

// deterministic work splitting: static contiguous chunks, one thread each,
// results written by index. Output never depends on scheduling, so reruns
// with any worker count agree bit for bit as long as f(i) itself is pure.

#include <cstddef>
#include <thread>
#include <vector>

namespace fpgame {

inline int resolve_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

template <class F>
void parallel_for(std::size_t n, int workers, F&& f) {
    const int w = std::min<std::size_t>(std::size_t(resolve_workers(workers)), n ? n : 1);
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(w));
    const std::size_t chunk = (n + std::size_t(w) - 1) / std::size_t(w);
    for (int k = 0; k < w; ++k) {
        const std::size_t lo = std::size_t(k) * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

template <class F>
auto parallel_map(std::size_t n, int workers, F&& f) {
    using R = decltype(f(std::size_t(0)));
    std::vector<R> out(n);
    parallel_for(n, workers, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

}  // namespace fpgame
