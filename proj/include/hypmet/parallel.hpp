#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace hypmet {

/// Splits [0, total) into at most `workers` contiguous ranges and runs
/// work(begin, end, state) for each, possibly on separate threads. Returns
/// the per-range states in range order. Scans stay deterministic across
/// worker counts as long as the caller merges states with a total order
/// (strict tie-breaks), because the merged optimum is then partition-free.
template <class State, class Work>
std::vector<State> run_partitioned(std::uint64_t total, int workers, Work work) {
    if (workers < 1) workers = 1;
    const std::uint64_t w = std::min<std::uint64_t>(static_cast<std::uint64_t>(workers),
                                                    total ? total : 1);
    std::vector<State> states(static_cast<std::size_t>(w));
    if (w <= 1) {
        work(std::uint64_t{0}, total, states[0]);
        return states;
    }
    const std::uint64_t chunk = total / w;
    const std::uint64_t rem = total % w;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(w - 1));
    std::uint64_t begin = 0;
    for (std::uint64_t r = 0; r < w; ++r) {
        const std::uint64_t end = begin + chunk + (r < rem ? 1 : 0);
        if (r == w - 1) {
            work(begin, end, states[static_cast<std::size_t>(r)]);
        } else {
            pool.emplace_back([&work, begin, end, &states, r]() {
                work(begin, end, states[static_cast<std::size_t>(r)]);
            });
        }
        begin = end;
    }
    for (std::thread& t : pool) t.join();
    return states;
}

} // namespace hypmet
