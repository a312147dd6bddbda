#pragma once

#include <thread>
#include <vector>

// Chunked parallel map with slot-indexed results: output depends only on
// the chunk boundaries, never on scheduling, so any later merge done in
// slot order (or over order-independent structures) is reproducible across
// thread counts.

namespace gu2 {

template <class R, class Fn>
std::vector<R> parallel_map_chunks(std::size_t n, int threads, Fn fn) {
    if (threads < 1) threads = 1;
    std::size_t nchunks = std::min<std::size_t>(threads, n ? n : 1);
    std::vector<R> slots(nchunks);
    if (nchunks <= 1) {
        slots[0] = fn(std::size_t{0}, n);
        return slots;
    }
    std::vector<std::thread> pool;
    std::size_t per = (n + nchunks - 1) / nchunks;
    for (std::size_t c = 0; c < nchunks; ++c) {
        std::size_t lo = c * per, hi = std::min(n, lo + per);
        pool.emplace_back([&, c, lo, hi] { slots[c] = fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
    return slots;
}

}  // namespace gu2
