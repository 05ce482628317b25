#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace diskzero {

/// Number of worker threads used by grid scans. Read from DISKZERO_WORKERS,
/// falling back to the hardware concurrency.
std::size_t worker_count();

/// Splits [0, n) into contiguous chunks, one per worker, and calls
/// fn(begin, end, chunk) for each. Chunk boundaries depend only on n and the
/// worker count, so reductions merged in chunk order are deterministic.
template <class Fn>
void parallel_chunks(std::size_t n, std::size_t workers, Fn&& fn) {
    if (workers <= 1 || n < 2) {
        fn(std::size_t{0}, n, std::size_t{0});
        return;
    }
    if (workers > n) workers = n;
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = n * w / workers;
            const std::size_t end = n * (w + 1) / workers;
            pool.emplace_back([&, begin, end, w] {
                try {
                    fn(begin, end, w);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace diskzero
