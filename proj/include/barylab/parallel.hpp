#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace barylab {

/// Thread count from BARYLAB_THREADS, else the hardware concurrency (at least 1).
inline int default_thread_count() {
    if (const char* env = std::getenv("BARYLAB_THREADS")) {
        try {
            const int t = std::stoi(env);
            if (t >= 1) return t;
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(begin, end, chunk) over `chunks` contiguous chunks of [0, count).
///
/// Chunk boundaries depend only on count and chunks, never on scheduling, so
/// callers that reduce per-chunk results in chunk order are deterministic.
/// The first exception thrown by any chunk is rethrown.
template <class Body>
void parallel_chunks(std::size_t count, int threads, std::size_t chunks, Body&& body) {
    chunks = std::max<std::size_t>(1, std::min(chunks, count));
    auto bounds = [&](std::size_t c) { return count * c / chunks; };
    if (threads <= 1 || chunks == 1) {
        for (std::size_t c = 0; c < chunks; ++c) body(bounds(c), bounds(c + 1), c);
        return;
    }
    std::vector<std::exception_ptr> errors(chunks);
    std::vector<std::thread> pool;
    const std::size_t workers = std::min<std::size_t>(threads, chunks);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t c = w; c < chunks; c += workers) {
                try {
                    body(bounds(c), bounds(c + 1), c);
                } catch (...) {
                    errors[c] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace barylab
