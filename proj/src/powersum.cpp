#include "powsum/powersum.hpp"

#include <stdexcept>
#include <vector>

#include "powsum/errors.hpp"

namespace powsum {

PowerSumQuery::PowerSumQuery(u64 n, u64 k) : n_(n), k_(k) {
    if (n == 0) {
        throw std::invalid_argument("power sum query: n must be >= 1");
    }
    if (k == 0) {
        throw std::invalid_argument("power sum query: k must be >= 1 (S_0(n) = n)");
    }
}

u64 power_sum_mod_naive(const PowerSumQuery& q, u64 cap) {
    if (q.n() > cap) {
        throw CapExceeded("naive power sum: n = " + std::to_string(q.n()) + " exceeds cap", cap);
    }
    const u64 n = q.n();
    u64 acc = 0;
    for (u64 j = 1; j <= n; ++j) {
        acc += mod_pow(j, q.k(), n);
        if (acc >= n) {
            acc -= n;
        }
    }
    return acc;
}

u64 prime_power_residue(u64 p, unsigned r, u64 k) {
    u64 pr = 1;
    for (unsigned i = 0; i < r; ++i) {
        pr *= p;
    }
    const u64 half = pr / p;  // p^(r-1)
    if (p == 2) {
        if (k % 2 == 1) {
            return mod_pow(half, k, pr);
        }
        return half % pr;
    }
    if (k % (p - 1) == 0) {
        return pr - half;  // -p^(r-1)
    }
    return 0;
}

u64 power_sum_mod_fast(const PowerSumQuery& q, const Factorization& f) {
    const u64 n = q.n();
    if (n == 1) {
        return 0;
    }
    if (n == 2) {
        return 1;
    }
    std::vector<Congruence> system;
    system.reserve(f.size());
    for (const auto& [p, r] : f) {
        u64 pr = 1;
        for (unsigned i = 0; i < r; ++i) {
            pr *= p;
        }
        const u64 cofactor = (n / pr) % pr;
        const u64 local = mul_mod(cofactor, prime_power_residue(p, r, q.k()), pr);
        system.emplace_back(BigInt(static_cast<unsigned long>(local)),
                            BigInt(static_cast<unsigned long>(pr)));
    }
    const auto solved = crt_solve(system);
    // Moduli are pairwise coprime, so the system always has a solution.
    return solved->residue.get_ui();
}

u64 power_sum_mod_fast(const PowerSumQuery& q) { return power_sum_mod_fast(q, factorize(q.n())); }

bool divides_power_sum(const Factorization& f, u128 k) {
    if (k == 0) {
        throw std::invalid_argument("divides_power_sum: k must be >= 1");
    }
    if (f.empty()) {
        return true;  // n = 1
    }
    const unsigned twos = f.parts().front().prime == 2 ? f.parts().front().exponent : 0;
    if (twos == 1) {
        return false;
    }
    if (twos >= 2) {
        return k % 2 == 1 && k > 1;
    }
    for (const auto& pp : f) {
        if (k % (pp.prime - 1) == 0) {
            return false;
        }
    }
    return true;
}

bool divides_power_sum(const PowerSumQuery& q) { return divides_power_sum(factorize(q.n()), q.k()); }

u64 carlitz_von_staudt_residue(const PowerSumQuery& q) {
    const u64 n = q.n();
    if (n % 2 != 0) {
        throw std::domain_error("carlitz_von_staudt_residue: n must be even");
    }
    if (q.k() <= 1) {
        throw std::domain_error("carlitz_von_staudt_residue: k must be > 1");
    }
    // For odd k only p = 2 can contribute, giving n/2, but when 4 | n the
    // sum is divisible by n. The sum over p | n holds for k even or n = 2 mod 4.
    if (n % 4 == 0 && q.k() % 2 == 1) {
        return 0;
    }
    u64 sum = 0;
    for (const auto& pp : factorize(n)) {
        if (q.k() % (pp.prime - 1) == 0) {
            sum = (sum + n / pp.prime) % n;
        }
    }
    return sum == 0 ? 0 : n - sum;
}

} // namespace powsum
