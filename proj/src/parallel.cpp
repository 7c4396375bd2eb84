#include "nirfuse/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace nirfuse {

int worker_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("NIRFUSE_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < n) n = cap;
    }
    return n;
}

void parallel_rows(int height, const std::function<void(int)>& fn) {
    const int workers = std::min(worker_count(), height > 0 ? height : 1);
    if (workers <= 1 || height <= 1) {
        for (int y = 0; y < height; ++y) fn(y);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        const int y0 = static_cast<int>(static_cast<long long>(height) * t / workers);
        const int y1 = static_cast<int>(static_cast<long long>(height) * (t + 1) / workers);
        pool.emplace_back([&, t, y0, y1] {
            try {
                for (int y = y0; y < y1; ++y) fn(y);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace nirfuse
