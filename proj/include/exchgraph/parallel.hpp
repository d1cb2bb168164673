#pragma once

// Replica-parallel map. Results are stored by replica index, so any
// reduction over the returned vector runs in index order no matter how the
// work was scheduled.

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace exchgraph {

/// 0 means "use the hardware concurrency".
inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1U, std::thread::hardware_concurrency());
}

template <class F>
auto parallel_map(long count, unsigned threads, F&& f) -> std::vector<decltype(f(0L))> {
    using R = decltype(f(0L));
    std::vector<R> out(static_cast<std::size_t>(std::max(count, 0L)));
    threads = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max(count, 1L)));
    if (threads <= 1) {
        for (long i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= count) return;
            try {
                out[i] = f(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace exchgraph
