#ifndef LIOUVILLE_PARALLEL_HPP
#define LIOUVILLE_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace liouville {

/// Fixed chunk size for partitioned reductions. Results are combined in chunk
/// order, so a reduction is bitwise identical for every worker count.
inline constexpr std::size_t kChunkSize = 4096;

inline std::size_t chunk_count(std::size_t n) noexcept { return (n + kChunkSize - 1) / kChunkSize; }

/// Calls body(chunk_index, begin, end) for each chunk of [0, n), spread across
/// `workers` threads. Chunks are handed out in ascending order; if any chunk
/// throws, the exception from the lowest failing chunk is rethrown.
template <class Body>
void parallel_chunks(std::size_t n, unsigned workers, Body&& body) {
    const std::size_t chunks = chunk_count(n);
    if (chunks == 0) return;
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(chunks)));
    if (workers == 1) {
        for (std::size_t c = 0; c < chunks; ++c)
            body(c, c * kChunkSize, std::min(n, (c + 1) * kChunkSize));
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::size_t failed_chunk = chunks;
    std::mutex failure_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= chunks) return;
            try {
                body(c, c * kChunkSize, std::min(n, (c + 1) * kChunkSize));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (c < failed_chunk) {
                    failed_chunk = c;
                    failure = std::current_exception();
                }
                next.store(chunks);
                return;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
        run();
    }
    if (failure) std::rethrow_exception(failure);
}

/// Sum of term(i) over [0, n); partial sums are added in chunk order.
template <class Term>
double parallel_sum(std::size_t n, unsigned workers, Term&& term) {
    std::vector<double> partial(chunk_count(n), 0.0);
    parallel_chunks(n, workers, [&](std::size_t c, std::size_t begin, std::size_t end) {
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i) s += term(i);
        partial[c] = s;
    });
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

/// Largest value(i) over [0, n) and the smallest index attaining it;
/// index n when n == 0.
template <class Value>
std::pair<double, std::size_t> parallel_argmax(std::size_t n, unsigned workers, Value&& value) {
    std::vector<std::pair<double, std::size_t>> partial(chunk_count(n), {-INFINITY, n});
    parallel_chunks(n, workers, [&](std::size_t c, std::size_t begin, std::size_t end) {
        auto best = partial[c];
        for (std::size_t i = begin; i < end; ++i) {
            const double x = value(i);
            if (x > best.first || best.second == n) best = {x, i};
        }
        partial[c] = best;
    });
    std::pair<double, std::size_t> best{-INFINITY, n};
    for (const auto& p : partial)
        if (p.second != n && (best.second == n || p.first > best.first)) best = p;
    return best;
}

}  // namespace liouville

#endif
