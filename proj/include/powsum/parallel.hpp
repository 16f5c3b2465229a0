#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

#include "powsum/arith.hpp"

namespace powsum::detail {

/// Splits [lo, hi] into `threads` contiguous blocks and runs
/// body(block_index, block_lo, block_hi) on each. Returns the block count.
/// The first exception thrown by any block is rethrown after all join.
template <class Body>
std::size_t parallel_blocks(u64 lo, u64 hi, unsigned threads, Body body) {
    if (hi < lo) {
        return 0;
    }
    const u64 total = hi - lo + 1;
    const u64 blocks = std::clamp<u64>(threads, 1, total);
    const u64 width = (total + blocks - 1) / blocks;
    if (blocks == 1) {
        body(std::size_t{0}, lo, hi);
        return 1;
    }
    std::vector<std::exception_ptr> errors(blocks);
    std::vector<std::thread> pool;
    pool.reserve(blocks);
    for (u64 i = 0; i < blocks; ++i) {
        const u64 b_lo = lo + i * width;
        const u64 b_hi = std::min(hi, b_lo + width - 1);
        pool.emplace_back([&, i, b_lo, b_hi] {
            try {
                if (b_lo <= b_hi) {
                    body(static_cast<std::size_t>(i), b_lo, b_hi);
                }
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return static_cast<std::size_t>(blocks);
}

} // namespace powsum::detail
