#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "powsum/arith.hpp"

namespace powsum {

/// Smallest-prime-factor table for [0, limit]. Immutable once built and
/// safe to read from many threads.
class SpfSieve {
public:
    explicit SpfSieve(u64 limit);

    u64 limit() const noexcept { return limit_; }

    /// Factorization of 1 <= n <= limit by repeated table lookup.
    Factorization factorize(u64 n) const;

    bool is_prime(u64 n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }

    std::uint32_t smallest_factor(u64 n) const { return spf_[n]; }

private:
    u64 limit_;
    std::vector<std::uint32_t> spf_;
};

/// Process-wide sieve covering at least [0, limit]. Rebuilt (and replaced)
/// only when a larger limit is requested.
std::shared_ptr<const SpfSieve> shared_sieve(u64 limit);

} // namespace powsum
