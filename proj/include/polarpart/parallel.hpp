#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace polarpart {

inline unsigned default_workers()
{
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

/// Splits [0, count) into `workers` contiguous chunks and runs
/// fn(worker, begin, end) on each. The first exception is rethrown.
template <class Fn>
void parallel_chunks(std::uint64_t count, unsigned workers, Fn&& fn)
{
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::uint64_t>(count, 1))));
    if (workers == 1) {
        fn(0u, std::uint64_t{0}, count);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    const std::uint64_t step = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = std::min(count, w * step);
        const std::uint64_t hi = std::min(count, lo + step);
        threads.emplace_back([&, w, lo, hi] {
            try {
                fn(w, lo, hi);
            }
            catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace polarpart
