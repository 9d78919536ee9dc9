#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace horolab::par {

// Worker count is a speed knob only: results must never depend on it.
int worker_count();
void set_worker_count(int n);

// Runs fn(chunk_index) for chunk_index in [0, n_chunks) on the worker pool.
// Each chunk is processed by exactly one thread; callers own the output slots.
void for_each_chunk(std::int64_t n_chunks, const std::function<void(std::int64_t)>& fn);

inline constexpr std::int64_t kDefaultChunk = 1 << 13;

// Deterministic reduction: partial sums are computed per fixed-size chunk and
// combined in chunk order, so the result is identical for any worker count.
template <class T, class F>
T chunked_sum(std::int64_t n, F&& f, std::int64_t chunk = kDefaultChunk) {
    if (n <= 0) return T{};
    const std::int64_t n_chunks = (n + chunk - 1) / chunk;
    std::vector<T> partial(static_cast<std::size_t>(n_chunks), T{});
    for_each_chunk(n_chunks, [&](std::int64_t c) {
        const std::int64_t lo = c * chunk;
        const std::int64_t hi = std::min(n, lo + chunk);
        T acc{};
        for (std::int64_t i = lo; i < hi; ++i) acc += f(i);
        partial[static_cast<std::size_t>(c)] = acc;
    });
    T total{};
    for (const T& p : partial) total += p;
    return total;
}

}  // namespace horolab::par
