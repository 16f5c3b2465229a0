#pragma once

// Integer sets characterized by divisibility of power sums, as exact
// membership predicates and as unions of arithmetic progressions.

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "powsum/arith.hpp"

namespace powsum {

/// {first + s*step : s >= 0}. When built from a residue class, `first` is
/// the least positive member, so first <= step.
struct ArithmeticProgression {
    u64 first = 1;
    u64 step = 1;

    /// Residue class r (mod step) over the positive integers.
    static ArithmeticProgression residue_class(const BigInt& residue, u64 step);

    bool contains(u64 n) const noexcept { return n >= first && (n - first) % step == 0; }

    /// The residue class first (mod step).
    Congruence congruence() const;

    friend auto operator<=>(const ArithmeticProgression&, const ArithmeticProgression&) = default;
};

/// Finite union of progressions plus finitely many isolated points. The
/// represented set is a truncation of an infinite family whenever
/// tail_bound > 0; tail_bound then bounds the density of what was omitted.
struct ProgressionUnion {
    std::vector<ArithmeticProgression> progressions;
    std::vector<u64> points;
    Rational tail_bound;
    std::string truncation_note;

    bool exact() const { return tail_bound == 0; }
    bool contains(u64 n) const;
};

enum class Family {
    Affine,       // n | S_{a n + b}(n)
    AntiKorselt,  // p - 1 does not divide n - 1 for every p | n
    PhiHalf,      // n | S_{phi(n)/2}(n)
    LambdaHalf,   // n | S_{lambda(n)/2}(n)
    FrakP,        // n odd, n | S_{(n-1)/2}(n)
    Upsilon,      // n odd, v2(p - 1) = k for every p | n
    W,            // {k : n | S_k(n)} for fixed n (members are exponents)
    H,            // {n : n | S_k(n)} for fixed k
};

/// A named set family with its parameters. Text form, as accepted by
/// parse(): "affine:a,b", "anti-korselt", "phi-half", "lambda-half",
/// "frak-p", "upsilon:k", "w:n", "h:k".
struct SetDescriptor {
    Family family = Family::Affine;
    u64 a = 0;      // Affine
    i64 b = 0;      // Affine
    u64 param = 0;  // Upsilon k, W n, H k

    static SetDescriptor affine(u64 a, i64 b) { return {Family::Affine, a, b, 0}; }
    static SetDescriptor anti_korselt() { return {Family::AntiKorselt}; }
    static SetDescriptor phi_half() { return {Family::PhiHalf}; }
    static SetDescriptor lambda_half() { return {Family::LambdaHalf}; }
    static SetDescriptor frak_p() { return {Family::FrakP}; }
    static SetDescriptor upsilon(u64 k);
    static SetDescriptor w(u64 n);
    static SetDescriptor h(u64 k);

    /// Throws std::invalid_argument on malformed text or invalid parameters.
    static SetDescriptor parse(const std::string& text);
    std::string str() const;

    friend bool operator==(const SetDescriptor&, const SetDescriptor&) = default;
};

struct Membership {
    bool member = false;
    /// The family's exponent is undefined at n (not a positive integer).
    bool out_of_domain = false;
};

/// Exact membership via the divisibility characterization; never sums.
Membership classify(const SetDescriptor& set, u64 n);
/// Same, with n's factorization supplied (ignored by W, which factors its
/// own parameter).
Membership classify(const SetDescriptor& set, u64 n, const Factorization& n_factors);
bool member(const SetDescriptor& set, u64 n);

/// {k >= 1 : n does not divide S_k(n)}, exact.
ProgressionUnion wn_complement(u64 n);
/// {n >= 1 : n does not divide S_k(n)}, exact.
ProgressionUnion hk_complement(u64 k);

/// Odd prime p with b = 0 (mod gcd(a p, p - 1)).
bool in_affine_prime_set(u64 a, i64 b, u64 p);

/// Least positive x with x = 0 (mod a p) and x = -b (mod p - 1), divided
/// by a. Throws std::domain_error if p is not an odd prime of the set above.
u64 xi(u64 a, i64 b, u64 p);

/// Progression {xi(a,b,p) + s * lcm(a p, p - 1)/a : s >= 0}: the n with
/// p | n and (p - 1) | a n + b.
ArithmeticProgression affine_prime_progression(u64 a, i64 b, u64 p);

/// Complement of the affine set n | S_{a n + b}(n), with the progression
/// family truncated to primes p <= prime_bound. Requires a >= 1 and
/// prime_bound >= 3.
ProgressionUnion affine_complement(u64 a, i64 b, u64 prime_bound);

/// Residue class -b p (mod p (p - 1)); p odd prime, b odd.
ArithmeticProgression g_progression(u64 p, i64 b);
/// Residue class p^2 (mod 2 p (p - 1)); p odd prime.
ArithmeticProgression f_progression(u64 p);

/// m > 2 and gcd(m, phi(m)) | b.
bool in_R(u64 m, i64 b);
bool in_R(const BigInt& m, const BigInt& phi_m, i64 b);

/// Intersection of g_progression(p, b) over the given distinct odd primes,
/// or std::nullopt when it is empty. The step is lcm(m, lambda(m)) with m
/// the product of the primes.
std::optional<ArithmeticProgression> intersect_g(std::span<const u64> primes, i64 b);
/// Same construction for f_progression.
std::optional<ArithmeticProgression> intersect_f(std::span<const u64> primes);

/// Membership in the lambda/2 set from the prime structure of n alone:
///   n odd:          v2(p - 1) equal for all p | n
///   n = 4m' or 8m': v2(p - 1) = 1 for all p | n, and n / 2^v2(n) != 3
/// Pure powers of two fall back to classify().
bool member_lambda_half_by_formula(u64 n);

struct ScanOptions {
    u64 cap = 10'000'000;
    unsigned threads = 1;
};

/// All members <= limit, ascending. Throws CapExceeded if limit > cap.
std::vector<u64> enumerate(const SetDescriptor& set, u64 limit, const ScanOptions& opts = {});

/// Number of members <= limit. Throws CapExceeded if limit > cap.
u64 count_members(const SetDescriptor& set, u64 limit, const ScanOptions& opts = {});

} // namespace powsum
