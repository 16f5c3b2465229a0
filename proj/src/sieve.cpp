#include "powsum/sieve.hpp"

#include <limits>
#include <mutex>
#include <stdexcept>

namespace powsum {

SpfSieve::SpfSieve(u64 limit) : limit_(limit) {
    if (limit >= std::numeric_limits<std::uint32_t>::max()) {
        throw std::length_error("SpfSieve: limit too large for a 32-bit table");
    }
    spf_.assign(limit + 1, 0);
    if (limit >= 1) {
        spf_[1] = 1;
    }
    std::vector<std::uint32_t> primes;
    // Linear sieve: each composite is written once, by its smallest prime.
    for (u64 i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes) {
            const u64 c = i * p;
            if (p > spf_[i] || c > limit) {
                break;
            }
            spf_[c] = p;
        }
    }
}

Factorization SpfSieve::factorize(u64 n) const {
    if (n == 0 || n > limit_) {
        throw std::out_of_range("SpfSieve::factorize: n outside sieve range");
    }
    std::vector<PrimePower> parts;
    while (n > 1) {
        const u64 p = spf_[n];
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        parts.push_back({p, e});
    }
    return Factorization(std::move(parts));
}

std::shared_ptr<const SpfSieve> shared_sieve(u64 limit) {
    static std::mutex mutex;
    static std::shared_ptr<const SpfSieve> cached;
    std::lock_guard lock(mutex);
    if (!cached || cached->limit() < limit) {
        cached = std::make_shared<const SpfSieve>(limit);
    }
    return cached;
}

} // namespace powsum
