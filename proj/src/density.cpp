#include "powsum/density.hpp"

#include <algorithm>
#include <stdexcept>

#include "powsum/errors.hpp"

namespace powsum {

namespace {

BigInt big(u64 v) { return BigInt(static_cast<unsigned long>(v)); }
BigInt big(i64 v) { return BigInt(static_cast<long>(v)); }

// Depth-first walk over subsets of `primes` in index order. `accept` is
// handed the running product m and lcm L of p - 1 for the extended subset
// and decides whether to count it and descend; rejection prunes every
// superset.
template <class Accept, class Count>
void subset_walk(const std::vector<u64>& primes, std::size_t from, const BigInt& m, const BigInt& lambda,
                 unsigned depth, std::uint64_t mask, Accept& accept, Count& count) {
    for (std::size_t j = from; j < primes.size(); ++j) {
        const BigInt m2 = m * big(primes[j]);
        const BigInt lambda2 = lcm(lambda, big(primes[j] - 1));
        const std::uint64_t mask2 = j < 64 ? mask | (std::uint64_t{1} << j) : mask;
        if (!accept(m2, lambda2)) {
            continue;
        }
        count(m2, lambda2, depth + 1, mask2, j);
        subset_walk(primes, j + 1, m2, lambda2, depth + 1, mask2, accept, count);
    }
}

BigInt product_of(const std::vector<u64>& primes) {
    BigInt p = 1;
    for (u64 q : primes) {
        p *= big(q);
    }
    return p;
}

BigInt lambda_of_all(const std::vector<u64>& primes) {
    BigInt l = 1;
    for (u64 q : primes) {
        l = lcm(l, big(q - 1));
    }
    return l;
}

} // namespace

Rational finite_union_density(std::span<const ArithmeticProgression> aps) {
    if (aps.size() > kMaxPieProgressions) {
        throw CapExceeded("finite_union_density: too many progressions for inclusion-exclusion",
                          kMaxPieProgressions);
    }
    BigInt common = 1;
    for (const auto& ap : aps) {
        common = lcm(common, big(ap.step));
    }
    BigInt numerator = 0;
    // Each stack frame extends the running intersection by one class.
    struct Walker {
        std::span<const ArithmeticProgression> aps;
        const BigInt& common;
        BigInt& numerator;
        void walk(std::size_t from, const Congruence& running, unsigned size) {
            for (std::size_t j = from; j < aps.size(); ++j) {
                const std::array<Congruence, 2> pair{running, aps[j].congruence()};
                const auto joined = crt_solve(pair);
                if (!joined) {
                    continue;  // every superset is empty too
                }
                const BigInt share = common / joined->modulus;
                if ((size + 1) % 2 == 1) {
                    numerator += share;
                } else {
                    numerator -= share;
                }
                walk(j + 1, *joined, size + 1);
            }
        }
    };
    Walker w{aps, common, numerator};
    w.walk(0, Congruence(0, 1), 0);
    return Rational(numerator, common);
}

Rational prime_tail_bound(u64 prime_bound) {
    if (prime_bound < 3) {
        throw std::invalid_argument("prime_tail_bound: prime bound must be >= 3");
    }
    return Rational(1, big(prime_bound));
}

void for_each_admissible(i64 b, u64 prime_bound, const std::function<void(std::uint64_t)>& visit,
                         u64 term_budget) {
    const auto primes = primes_in_range(3, prime_bound);
    if (primes.size() > 64) {
        throw std::invalid_argument("for_each_admissible: more than 64 odd primes");
    }
    u64 terms = 0;
    auto accept = [&](const BigInt& m, const BigInt& lambda) {
        const BigInt g = gcd(m, lambda);
        return mpz_divisible_p(big(b).get_mpz_t(), g.get_mpz_t()) != 0;
    };
    auto count = [&](const BigInt&, const BigInt&, unsigned, std::uint64_t mask, std::size_t) {
        if (++terms > term_budget) {
            throw BudgetExceeded("admissible subset walk", term_budget);
        }
        visit(mask);
    };
    subset_walk(primes, 0, BigInt(1), BigInt(1), 0, 0, accept, count);
}

AdmissibleSum admissible_pie_sum(i64 b, u64 prime_bound, u64 term_budget) {
    const auto primes = primes_in_range(3, prime_bound);
    const BigInt common = product_of(primes) * lambda_of_all(primes);
    BigInt numerator = 0;
    u64 terms = 0;
    // gcd(m, phi(m)) = gcd(m, lambda(m)) for squarefree m, and it only grows
    // along a branch, so a failed divisibility test prunes the subtree.
    auto accept = [&](const BigInt& m, const BigInt& lambda) {
        const BigInt g = gcd(m, lambda);
        return mpz_divisible_p(big(b).get_mpz_t(), g.get_mpz_t()) != 0;
    };
    auto count = [&](const BigInt& m, const BigInt& lambda, unsigned omega, std::uint64_t, std::size_t) {
        if (++terms > term_budget) {
            throw BudgetExceeded("admissible inclusion-exclusion sum", term_budget);
        }
        const BigInt share = common / lcm(m, lambda);
        if (omega % 2 == 0) {
            numerator += share;
        } else {
            numerator -= share;
        }
    };
    subset_walk(primes, 0, BigInt(1), BigInt(1), 0, 0, accept, count);
    return {Rational(numerator, common), terms};
}

DensityEnclosure affine_density_enclosure(u64 a, i64 b, u64 prime_bound, const DensityOptions& opts) {
    if (a == 0) {
        throw std::invalid_argument("affine_density_enclosure: a must be >= 1");
    }
    if (prime_bound < 3) {
        throw std::invalid_argument("affine_density_enclosure: prime bound must be >= 3");
    }
    u64 bound = prime_bound;
    std::string budget_note;
    for (;;) {
        const ProgressionUnion complement = affine_complement(a, b, bound);
        try {
            const Rational union_part = union_density(complement.progressions, opts.cell_budget);
            DensityEnclosure e;
            e.upper = Rational(1) - union_part;
            e.tail_bound = complement.tail_bound;
            e.lower = e.upper - e.tail_bound;
            if (e.lower.sign() < 0) {
                e.lower = Rational(0);
            }
            e.prime_bound = complement.exact() ? 0 : bound;
            e.truncation = complement.truncation_note + budget_note;
            return e;
        } catch (const BudgetExceeded&) {
            const auto below = primes_in_range(3, bound - 1);
            if (below.empty()) {
                throw;
            }
            bound = below.back();
            budget_note = "; cell budget " + std::to_string(opts.cell_budget) + " exceeded at prime bound " +
                          std::to_string(prime_bound) + ", lowered to " + std::to_string(bound);
        }
    }
}

DensityEnclosure anti_korselt_enclosure(u64 prime_bound, const DensityOptions& opts) {
    DensityEnclosure e = affine_density_enclosure(1, -1, prime_bound, opts);
    const Rational quarter(1, 4);
    e.lower -= quarter;
    e.upper -= quarter;
    if (e.lower.sign() < 0) {
        e.lower = Rational(0);
    }
    e.truncation += "; shifted by -1/4 from affine:1,-1";
    return e;
}

std::vector<Rational> supremum_sequence(u64 k, u64 cap) {
    if (k == 0) {
        throw std::invalid_argument("supremum: k must be >= 1");
    }
    if (k > cap) {
        throw CapExceeded("supremum: k = " + std::to_string(k) + " exceeds cap", cap);
    }
    std::vector<u64> primes;
    for (u64 p = 3; primes.size() < k; p += 2) {
        if (is_prime(p)) {
            primes.push_back(p);
        }
    }
    const BigInt common = product_of(primes) * lambda_of_all(primes);
    // Terms bucketed by the index of their largest prime, so value(j) is a
    // prefix sum over buckets.
    std::vector<BigInt> bucket(k, 0);
    auto accept = [](const BigInt&, const BigInt&) { return true; };
    auto count = [&](const BigInt& m, const BigInt& lambda, unsigned omega, std::uint64_t, std::size_t last) {
        const BigInt share = common / lcm(m, lambda);
        if (omega % 2 == 0) {
            bucket[last] += share;
        } else {
            bucket[last] -= share;
        }
    };
    subset_walk(primes, 0, BigInt(1), BigInt(1), 0, 0, accept, count);
    std::vector<Rational> values;
    BigInt running = common;  // m = 1 contributes +1
    const Rational quarter(1, 4);
    for (u64 j = 0; j < k; ++j) {
        running += bucket[j];
        values.push_back(Rational(running, common) - quarter);
    }
    return values;
}

Rational supremum_upper_bound(u64 k, u64 cap) { return supremum_sequence(k, cap).back(); }

Rational empirical_density(const SetDescriptor& set, u64 limit, const ScanOptions& opts) {
    if (limit == 0) {
        throw std::invalid_argument("empirical_density: limit must be >= 1");
    }
    return Rational(big(count_members(set, limit, opts)), big(limit));
}

} // namespace powsum
