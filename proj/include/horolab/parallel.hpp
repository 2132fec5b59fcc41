#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace horolab::par {

// Half-open index range [begin, end).
struct ChunkRange {
    std::int64_t begin;
    std::int64_t end;
};

// Fixed-size partition of [0, n). Chunk boundaries depend only on n and
// chunkSize, never on the number of threads, so every reduction below is
// bit-for-bit reproducible across thread counts.
inline std::vector<ChunkRange> make_chunks(std::int64_t n, std::int64_t chunkSize) {
    std::vector<ChunkRange> out;
    if (n <= 0) return out;
    if (chunkSize < 1) chunkSize = 1;
    out.reserve(static_cast<std::size_t>((n + chunkSize - 1) / chunkSize));
    for (std::int64_t b = 0; b < n; b += chunkSize)
        out.push_back({b, b + chunkSize < n ? b + chunkSize : n});
    return out;
}

// Evaluates fn(begin, end) -> T on each chunk in parallel and combines the
// per-chunk results serially in chunk order. T needs operator+=.
template <class T, class ChunkFn>
T chunked_sum(std::int64_t n, std::int64_t chunkSize, ChunkFn&& fn) {
    const auto chunks = make_chunks(n, chunkSize);
    std::vector<T> partial(chunks.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(chunks.size()); ++i)
        partial[static_cast<std::size_t>(i)] = fn(chunks[static_cast<std::size_t>(i)].begin,
                                                  chunks[static_cast<std::size_t>(i)].end);
    T total{};
    for (const T& p : partial) total += p;
    return total;
}

// Runs fn(begin, end, chunkIndex) on each chunk in parallel; the caller owns
// any per-chunk output slots (indexed by chunkIndex, hence order-preserving).
template <class ChunkFn>
std::size_t chunked_for(std::int64_t n, std::int64_t chunkSize, ChunkFn&& fn) {
    const auto chunks = make_chunks(n, chunkSize);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(chunks.size()); ++i)
        fn(chunks[static_cast<std::size_t>(i)].begin, chunks[static_cast<std::size_t>(i)].end,
           static_cast<std::size_t>(i));
    return chunks.size();
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

} // namespace horolab::par
