#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace tdht {

/// Split [0, count) into at most `jobs` contiguous chunks and run
/// fn(begin, end) on each, joining before return. Chunk boundaries depend
/// only on (count, jobs), so workers writing disjoint index ranges produce
/// results independent of scheduling.
template <typename Fn>
void parallel_for(std::uint64_t count, int jobs, Fn&& fn) {
    if (jobs <= 1 || count < 2) {
        fn(std::uint64_t(0), count);
        return;
    }
    std::uint64_t workers = std::min<std::uint64_t>(jobs, count);
    std::uint64_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
        std::uint64_t begin = w * chunk;
        std::uint64_t end = std::min(begin + chunk, count);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace tdht
