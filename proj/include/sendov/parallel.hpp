#pragma once

// Ordered parallel map over an index range.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace sendov {

/// out[i] = fn(i) for i < count, computed on up to `jobs` threads. Ordering is
/// by index; the first exception (lowest index) is rethrown.
template <typename Fn>
auto parallel_map(std::size_t count, unsigned jobs, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
    using R = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<R> out(count);
    const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1u), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr err;
    std::size_t err_index = count;
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (i < err_index) {
                    err_index = i;
                    err = std::current_exception();
                }
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
    pool.clear();
    if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace sendov
