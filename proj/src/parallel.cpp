#include "horolab/parallel.hpp"

#include <cstdlib>

namespace horolab::par {

namespace {
int g_workers = 0;  // 0 = uninitialized

int initial_workers() {
    if (const char* env = std::getenv("HOROLAB_WORKERS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}
}  // namespace

int worker_count() {
    if (g_workers == 0) g_workers = initial_workers();
    return g_workers;
}

void set_worker_count(int n) { g_workers = n >= 1 ? n : 1; }

void for_each_chunk(std::int64_t n_chunks, const std::function<void(std::int64_t)>& fn) {
    const int workers = worker_count();
    if (workers <= 1 || n_chunks <= 1) {
        for (std::int64_t c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto body = [&] {
        for (;;) {
            std::int64_t c = next.fetch_add(1);
            if (c >= n_chunks) break;
            fn(c);
        }
    };
    std::vector<std::thread> pool;
    const int spawn = static_cast<int>(std::min<std::int64_t>(workers, n_chunks)) - 1;
    pool.reserve(static_cast<std::size_t>(spawn));
    for (int i = 0; i < spawn; ++i) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();
}

}  // namespace horolab::par
