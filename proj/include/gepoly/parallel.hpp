#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace gepoly {

// Runs f(i) for i in [0, n). Tasks must be independent; results land wherever
// the caller indexed them, so output order never depends on scheduling. The
// first exception (by task index) is rethrown after all threads join.
template <typename F>
void parallel_for(std::size_t n, F&& f, unsigned threads = 0) {
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    if (threads > n) threads = static_cast<unsigned>(n);

    struct Failure {
        std::size_t index;
        std::exception_ptr error;
    };
    std::vector<Failure> failures(threads, {SIZE_MAX, nullptr});
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += threads) {
                try {
                    f(i);
                } catch (...) {
                    if (failures[t].error == nullptr) failures[t] = {i, std::current_exception()};
                }
            }
        });
    }
    for (auto& th : pool) th.join();

    const Failure* first = nullptr;
    for (const auto& fail : failures)
        if (fail.error && (!first || fail.index < first->index)) first = &fail;
    if (first) std::rethrow_exception(first->error);
}

}  // namespace gepoly
