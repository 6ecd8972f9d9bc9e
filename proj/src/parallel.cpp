#include "svi/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace svi {

namespace {
std::atomic<int> g_max_workers{1};
}

void set_max_workers(int jobs) { g_max_workers.store(jobs < 1 ? 1 : jobs); }

int max_workers() { return g_max_workers.load(); }

void parallel_for(Index n, const std::function<void(Index)>& fn) {
    const int jobs = std::min<int>(max_workers(), static_cast<int>(n));
    if (jobs <= 1) {
        for (Index i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<Index> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const Index i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace svi
