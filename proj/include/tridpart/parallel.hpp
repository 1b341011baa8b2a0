#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace tridpart::detail {

/// Chunked parallel loop over [0, count). The body must only write to
/// per-index slots; results are then independent of scheduling.
template <class Fn>
void parallel_for(std::size_t count, Fn&& body, std::size_t grain = 64) {
    const unsigned hw = std::thread::hardware_concurrency();
    if (hw <= 1 || count < 2 * grain) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(hw, (count + grain - 1) / grain);
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
}

}  // namespace tridpart::detail
