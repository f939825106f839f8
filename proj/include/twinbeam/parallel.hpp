#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace twinbeam {

inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs body(begin, end) over fixed-size blocks of [0, n). Blocks are handed out
// round-robin; callers write results by index so output never depends on the
// worker count.
template <class Body>
void parallel_for_blocks(std::uint64_t n, unsigned workers, Body&& body,
                         std::uint64_t block = 4096) {
    const std::uint64_t blocks = (n + block - 1) / block;
    const unsigned count =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), std::max<std::uint64_t>(blocks, 1)));
    auto run = [&](unsigned worker) {
        for (std::uint64_t b = worker; b < blocks; b += count) {
            body(b * block, std::min(n, (b + 1) * block));
        }
    };
    if (count <= 1) {
        run(0);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(count);
        for (unsigned w = 0; w < count; ++w) {
            pool.emplace_back([&, w] {
                try {
                    run(w);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace twinbeam
