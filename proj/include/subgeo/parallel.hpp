#ifndef SUBGEO_PARALLEL_HPP
#define SUBGEO_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace subgeo {

inline std::size_t effective_workers(std::size_t count, std::size_t workers) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    return std::max<std::size_t>(1, std::min(count, workers));
}

/// Calls fn(rep, worker) for rep in [0, count). Worker w handles reps
/// w, w + W, w + 2W, ... so per-worker state stays deterministic; callers
/// merge per-worker results in worker order. The first exception is rethrown.
template <class Fn>
void for_each_rep(std::size_t count, std::size_t workers, Fn&& fn) {
    const std::size_t W = effective_workers(count, workers);
    if (W == 1) {
        for (std::size_t r = 0; r < count; ++r) fn(r, std::size_t{0});
        return;
    }
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(W);
    for (std::size_t w = 0; w < W; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t r = w; r < count; r += W) fn(r, w);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace subgeo

#endif  // SUBGEO_PARALLEL_HPP
