#pragma once

#include <algorithm>
#include <future>
#include <utility>
#include <vector>

namespace kakeya {

// Splits [0, n) into `jobs` contiguous chunks, evaluates chunk_fn(lo, hi) on
// each, and folds the results in chunk order. Chunk results must combine
// associatively so the outcome is identical for every jobs value (integer
// sums, maxima with index tie-breaks, concatenation in index order).
template <class T, class ChunkFn, class Merge>
T chunked_reduce(long n, int jobs, T init, ChunkFn chunk_fn, Merge merge) {
    if (jobs <= 1 || n < 2) {
        if (n <= 0) return init;
        return merge(std::move(init), chunk_fn(0L, n));
    }
    jobs = static_cast<int>(std::min<long>(jobs, n));
    std::vector<std::future<T>> futures;
    futures.reserve(jobs);
    for (int c = 0; c < jobs; ++c) {
        long lo = n * c / jobs;
        long hi = n * (c + 1) / jobs;
        futures.push_back(std::async(std::launch::async, chunk_fn, lo, hi));
    }
    T acc = std::move(init);
    for (auto& f : futures) acc = merge(std::move(acc), f.get());
    return acc;
}

} // namespace kakeya
