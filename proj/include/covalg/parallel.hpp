#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace covalg {

/// Worker cap: COVHALG_THREADS if set (minimum 1), else hardware concurrency.
inline unsigned thread_budget() {
    if (const char* env = std::getenv("COVHALG_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Static block partition of [0, count) over the thread budget.
///
/// Each index is processed exactly once and owns its output cell, so
/// results are independent of the worker count; per-cell summation
/// order never changes.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const unsigned budget = std::min<std::size_t>(thread_budget(), count == 0 ? 1 : count);
    if (budget <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(budget);
    const std::size_t chunk = (count + budget - 1) / budget;
    for (unsigned w = 0; w < budget; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : workers) t.join();
}

}  // namespace covalg
