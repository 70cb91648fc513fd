#include "ivvi/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <algorithm>
#include <thread>
#include <vector>

namespace ivvi {

std::size_t worker_count() noexcept {
    if (const char* env = std::getenv("IVVI_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    const std::size_t workers = std::min(worker_count(), n);
    if (workers <= 1) {
        if (n) body(0, n);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::exception_ptr> errors((n + chunk - 1) / chunk);
    std::vector<std::thread> pool;
    for (std::size_t c = 0; c < errors.size(); ++c) {
        pool.emplace_back([&, c] {
            try {
                body(c * chunk, std::min(n, (c + 1) * chunk));
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace ivvi
