#pragma once

// Exact integer kernel: primality, factorization, multiplicative functions
// and the Chinese remainder solver shared by every other module.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "powsum/rational.hpp"

namespace powsum {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

struct PrimePower {
    u64 prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical prime-power decomposition, ascending by prime.
/// The integer 1 has the empty factorization.
class Factorization {
public:
    Factorization() = default;

    /// Takes (prime, exponent) pairs in any order; merges repeats and sorts.
    explicit Factorization(std::vector<PrimePower> parts);

    const std::vector<PrimePower>& parts() const noexcept { return parts_; }
    auto begin() const noexcept { return parts_.begin(); }
    auto end() const noexcept { return parts_.end(); }
    bool empty() const noexcept { return parts_.empty(); }
    std::size_t size() const noexcept { return parts_.size(); }

    /// Number of distinct prime factors.
    unsigned omega() const noexcept { return static_cast<unsigned>(parts_.size()); }

    /// Product of prime^exponent; throws std::overflow_error past 64 bits.
    u64 value() const;

    /// Exponent of `p` (0 if absent).
    unsigned exponent_of(u64 p) const noexcept;

    friend bool operator==(const Factorization&, const Factorization&) = default;

private:
    std::vector<PrimePower> parts_;
};

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

/// base^exponent mod modulus; exponent 0 gives 1 mod modulus.
u64 mod_pow(u64 base, u64 exponent, u64 modulus);

u64 gcd_u64(u64 a, u64 b);

/// lcm, throwing std::overflow_error if the result exceeds 64 bits.
u64 lcm_u64(u64 a, u64 b);

/// Deterministic over the full 64-bit range.
bool is_prime(u64 n);

/// Throws std::domain_error for n == 0.
Factorization factorize(u64 n);

u64 euler_phi(u64 n);
u64 euler_phi(const Factorization& f);

u64 carmichael_lambda(u64 n);
u64 carmichael_lambda(const Factorization& f);

/// Largest k with 2^k | m; throws std::domain_error for m == 0.
unsigned two_adic_valuation(u64 m);

/// Primes p with lo <= p <= hi, ascending.
std::vector<u64> primes_in_range(u64 lo, u64 hi);

/// x = residue (mod modulus), residue reduced into [0, modulus).
struct Congruence {
    BigInt residue;
    BigInt modulus;

    Congruence() : residue(0), modulus(1) {}
    /// Reduces any integer residue; throws std::domain_error for modulus < 1.
    Congruence(const BigInt& residue, const BigInt& modulus);

    friend bool operator==(const Congruence& a, const Congruence& b) {
        return a.residue == b.residue && a.modulus == b.modulus;
    }
};

/// Combines the system into one congruence modulo the lcm of the moduli, or
/// std::nullopt when the congruences are incompatible.
std::optional<Congruence> crt_solve(std::span<const Congruence> system);

} // namespace powsum
