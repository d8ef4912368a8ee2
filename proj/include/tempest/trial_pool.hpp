#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace tempest {

/// Runs `body(t)` for t in [0, trials) on an independent worker pool and
/// returns the outputs in trial order. Bodies must depend only on their trial
/// index (callers derive per-trial RNG streams from it), so the reduction is
/// identical for any worker count. `workers` 0 picks the hardware
/// concurrency; the first exception thrown by a body is rethrown after the
/// pool drains.
template <typename Fn>
auto run_trial_pool(int trials, Fn&& body, unsigned workers = 0)
    -> std::vector<decltype(body(0))> {
    std::vector<decltype(body(0))> out(
        trials > 0 ? static_cast<std::size_t>(trials) : 0);
    if (trials <= 0) return out;
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = std::min(workers, static_cast<unsigned>(trials));
    if (workers <= 1) {
        for (int t = 0; t < trials; ++t) {
            out[static_cast<std::size_t>(t)] = body(t);
        }
        return out;
    }

    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto drain = [&] {
        for (;;) {
            const int t = next.fetch_add(1, std::memory_order_relaxed);
            if (t >= trials) return;
            try {
                out[static_cast<std::size_t>(t)] = body(t);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(drain);
    drain();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace tempest
