#pragma once

// Exact and certified asymptotic densities of progression unions and of the
// characterized sets.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "powsum/rational.hpp"
#include "powsum/sets.hpp"

namespace powsum {

/// Exact rational bracket [lower, upper] around an asymptotic density.
struct DensityEnclosure {
    Rational lower;
    Rational upper;
    Rational tail_bound;   // upper - lower <= tail_bound
    u64 prime_bound = 0;   // 0 when the set is represented exactly
    std::string truncation;

    Rational width() const { return upper - lower; }
    bool contains(const Rational& x) const { return lower <= x && x <= upper; }
    bool intersects(const Rational& lo, const Rational& hi) const { return lower <= hi && lo <= upper; }
    /// This enclosure lies inside `outer`.
    bool nested_in(const DensityEnclosure& outer) const {
        return outer.lower <= lower && upper <= outer.upper;
    }
};

inline constexpr std::size_t kMaxPieProgressions = 30;
inline constexpr u64 kDefaultCellBudget = 5'000'000;
inline constexpr u64 kDefaultTermBudget = 50'000'000;
inline constexpr u64 kDefaultSupremumCap = 26;

/// Exact density of a union of residue classes by inclusion-exclusion over
/// all subsets, each intersection resolved by CRT. At most 30 progressions.
Rational finite_union_density(std::span<const ArithmeticProgression> aps);

/// Exact density of a union of residue classes of any size. Splits every
/// class into its prime-power congruences and sums the complement's
/// indicator out one prime coordinate at a time. Cost grows with how many
/// primes interact through shared classes, not with the number of classes.
/// Throws BudgetExceeded if an intermediate table would exceed cell_budget.
Rational union_density(std::span<const ArithmeticProgression> aps, u64 cell_budget = kDefaultCellBudget);

/// Certified upper bound on the sum over primes p > prime_bound of
/// 1/(p(p - 1)): the telescoping value 1/prime_bound.
Rational prime_tail_bound(u64 prime_bound);

/// Sum over squarefree products m of odd primes <= prime_bound with
/// m in R_b of (-1)^omega(m) / lcm(m, lambda(m)). Its negation is the
/// density of the union of g_progression(p, b) over those primes.
struct AdmissibleSum {
    Rational sum;
    u64 terms = 0;
};
AdmissibleSum admissible_pie_sum(i64 b, u64 prime_bound, u64 term_budget = kDefaultTermBudget);

/// Visits every admissible m (as above) as a bitmask over the odd primes
/// <= prime_bound (bit i = i-th odd prime). Needs at most 64 odd primes.
void for_each_admissible(i64 b, u64 prime_bound, const std::function<void(std::uint64_t)>& visit,
                         u64 term_budget = kDefaultTermBudget);

struct DensityOptions {
    u64 cell_budget = kDefaultCellBudget;
};

/// Certified enclosure of the density of {n : n | S_{a n + b}(n)}, from
/// the complement's progressions over primes <= prime_bound. Exact when
/// a and b have different parity. When the budget is exceeded the prime
/// bound is lowered until it fits and the wider tail is reported.
DensityEnclosure affine_density_enclosure(u64 a, i64 b, u64 prime_bound, const DensityOptions& opts = {});

/// Anti-Korselt density: the (1, -1) affine enclosure shifted by -1/4.
DensityEnclosure anti_korselt_enclosure(u64 prime_bound, const DensityOptions& opts = {});

/// Sum over all divisors m of the product of the first k odd primes of
/// (-1)^omega(m) / lcm(m, lambda(m)), minus 1/4. Non-increasing in k, so
/// every value bounds the supremum of the (1, b) densities from above.
Rational supremum_upper_bound(u64 k, u64 cap = kDefaultSupremumCap);
/// Values for 1..k in one pass.
std::vector<Rational> supremum_sequence(u64 k, u64 cap = kDefaultSupremumCap);

/// (members <= limit) / limit by sieve-backed membership.
Rational empirical_density(const SetDescriptor& set, u64 limit, const ScanOptions& opts = {});

} // namespace powsum
