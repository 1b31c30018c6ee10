#ifndef EISLAB_PARALLEL_HPP
#define EISLAB_PARALLEL_HPP

#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace eislab {

// Runs fn(i) for i in [0, n) across hardware threads.  Work items write to
// caller-owned slots indexed by i, so reductions stay deterministic no
// matter the interleaving.  The first exception is rethrown in the caller.
inline void parallel_for(long n, const std::function<void(long)>& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw < 2 || n < 4) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    unsigned workers = hw < static_cast<unsigned>(n) ? hw : static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    std::exception_ptr first_error = nullptr;
    std::mutex err_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (long i = static_cast<long>(w); i < n; i += static_cast<long>(workers)) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace eislab

#endif
