#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace bqf {

// Runs fn(begin, end, chunk) over `chunks` contiguous slices of [0, n) on up
// to `workers` threads. Slices depend only on n and chunks, never on the
// worker count, so per-chunk results merged in chunk order are identical for
// any degree of parallelism. The first exception thrown is rethrown.
template <class Fn>
void parallel_chunks(std::size_t n, std::size_t chunks, unsigned workers, Fn fn)
{
    chunks = std::max<std::size_t>(1, std::min(chunks, n == 0 ? 1 : n));
    auto slice = [&](std::size_t c) {
        return std::pair<std::size_t, std::size_t>(n * c / chunks, n * (c + 1) / chunks);
    };
    workers = std::max(1u, workers);
    if (workers == 1 || chunks == 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            auto [b, e] = slice(c);
            fn(b, e, c);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(chunks);
    std::vector<std::thread> pool;
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t c = t; c < chunks; c += threads) {
                try {
                    auto [b, e] = slice(c);
                    fn(b, e, c);
                } catch (...) {
                    errors[c] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& err : errors) {
        if (err)
            std::rethrow_exception(err);
    }
}

}  // namespace bqf
