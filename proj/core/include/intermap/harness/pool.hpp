#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace intermap::harness {

/// Run fn(i) for i in [0, count) on up to `workers` threads. Work items
/// write into caller-owned slots indexed by i, so results are independent
/// of scheduling; the first exception is rethrown after all threads join.
inline void parallel_for_index(std::size_t count, int workers,
                               const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    unsigned n_threads = workers > 0
                             ? static_cast<unsigned>(workers)
                             : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, count);
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        threads.emplace_back([&]() {
            while (!failed.load()) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                }
            }
        });
    }
    for (std::thread& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace intermap::harness
