#pragma once

// Residues and divisibility of S_k(n) = 1^k + 2^k + ... + n^k modulo n.

#include "powsum/arith.hpp"

namespace powsum {

/// A pair (n, k) with n >= 1 and k >= 1. k = 0 gives S_0(n) = n and is
/// rejected.
class PowerSumQuery {
public:
    /// Throws std::invalid_argument when n or k is zero.
    PowerSumQuery(u64 n, u64 k);

    u64 n() const noexcept { return n_; }
    u64 k() const noexcept { return k_; }

private:
    u64 n_;
    u64 k_;
};

inline constexpr u64 kDefaultNaiveCap = 10'000'000;

/// Direct summation of mod_pow(j, k, n) for j = 1..n. Throws CapExceeded
/// when n > cap.
u64 power_sum_mod_naive(const PowerSumQuery& q, u64 cap = kDefaultNaiveCap);

/// S_k(n) mod n from the local residue at each prime power p^r || n,
/// combined by CRT. O(omega(n) log k).
u64 power_sum_mod_fast(const PowerSumQuery& q);
u64 power_sum_mod_fast(const PowerSumQuery& q, const Factorization& n_factors);

/// Local residue S_k(p^r) mod p^r.
u64 prime_power_residue(u64 p, unsigned r, u64 k);

/// n | S_k(n), decided from the prime divisors of n without summation:
///   n = 1          -> true
///   n odd          -> no prime p | n with (p - 1) | k
///   n = 2 (mod 4)  -> false
///   4 | n          -> k odd and k > 1
bool divides_power_sum(const PowerSumQuery& q);

/// Same decision on a precomputed factorization of n. The exponent is taken
/// as 128-bit so affine exponents a*n + b never wrap; k must be >= 1.
bool divides_power_sum(const Factorization& n_factors, u128 k);

/// -(sum of n/p over primes p | n with (p - 1) | k) mod n, except 0 when
/// 4 | n and k is odd (the sum would give n/2 there).
/// Requires n even and k > 1 (std::domain_error otherwise).
u64 carlitz_von_staudt_residue(const PowerSumQuery& q);

} // namespace powsum
