#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace pswkb {

// Row-partitioned parallel loop; f(i) must be independent across i.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t n_threads = std::min(hw, n);
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += n_threads) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace pswkb
