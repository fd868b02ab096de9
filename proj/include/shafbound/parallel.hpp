#ifndef SHAFBOUND_PARALLEL_HPP
#define SHAFBOUND_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace shafbound {

/// Splits [0, n) into `jobs` contiguous chunks, runs fn(begin, end) on each,
/// and returns the per-chunk results in chunk order. The fixed partition
/// makes the output independent of scheduling, so callers are deterministic
/// for every jobs value.
template <class R, class Fn>
std::vector<R> parallel_map_chunks(std::size_t n, int jobs, Fn fn) {
    if (jobs < 1) jobs = 1;
    const std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(jobs), n ? n : 1);
    std::vector<R> results(chunks);
    if (chunks <= 1) {
        results[0] = fn(0, n);
        return results;
    }
    std::vector<std::thread> workers;
    workers.reserve(chunks);
    const std::size_t step = (n + chunks - 1) / chunks;
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = c * step;
        const std::size_t end = std::min(n, begin + step);
        workers.emplace_back([&, c, begin, end] { results[c] = fn(begin, end); });
    }
    for (auto& w : workers) w.join();
    return results;
}

}  // namespace shafbound

#endif
