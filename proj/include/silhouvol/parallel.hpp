#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace silhouvol {

/// Worker count: min(hardware threads, SILHOUVOL_THREADS if set). At least 1.
inline int thread_budget() {
    int budget = static_cast<int>(std::thread::hardware_concurrency());
    if (budget < 1) budget = 1;
    if (const char* env = std::getenv("SILHOUVOL_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1 && cap < budget) budget = static_cast<int>(cap);
    }
    return budget;
}

/// Runs fn(i) for i in [0, n). Results must be written into slots keyed by i so
/// the outcome is independent of scheduling. If a task throws, the exception of
/// the lowest failing index is rethrown after all workers finish.
template <typename Fn>
void parallel_for_index(std::size_t n, Fn&& fn) {
    if (n == 0) return;
    const int workers = static_cast<int>(std::min<std::size_t>(n, thread_budget()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> failures(n);
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    for (auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
}

} // namespace silhouvol
