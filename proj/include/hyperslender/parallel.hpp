#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace hyperslender {

/// Worker cap: hardware concurrency, overridable by HYPERSLENDER_THREADS,
/// never more than the job count.
inline std::size_t worker_count(std::size_t jobs) {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("HYPERSLENDER_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            n = static_cast<std::size_t>(std::min<long>(v, 1024));
    }
    return std::max<std::size_t>(1, std::min(n, std::max<std::size_t>(jobs, 1)));
}

/// Runs fn(i) for i in [0, n). Callers keep results in slots indexed by i so
/// the outcome is independent of scheduling. The lowest-index exception is
/// rethrown after all workers finish.
inline void parallel_for(std::size_t n,
                         const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t workers = worker_count(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace hyperslender
