#include "fracperiod/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace fracperiod {

int max_threads() {
    static const int cached = [] {
        if (const char* env = std::getenv("FRACPERIOD_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v > 0) return static_cast<int>(v);
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw > 0 ? static_cast<int>(hw) : 1;
    }();
    return cached;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const int workers = max_threads();
    if (n == 0) return;
    if (workers <= 1 || n < 4) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};

    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load(std::memory_order_relaxed)) return;
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true)) first_error = std::current_exception();
                return;
            }
        }
    };

    const std::size_t count =
        std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    std::vector<std::thread> pool;
    pool.reserve(count - 1);
    for (std::size_t w = 1; w < count; ++w) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();

    if (failed.load()) std::rethrow_exception(first_error);
}

} // namespace fracperiod
