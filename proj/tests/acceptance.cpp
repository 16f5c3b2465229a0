// Acceptance gate: one PASS/FAIL line per criterion. Every bound and
// interval used below is a named constant.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "powsum/density.hpp"
#include "powsum/powersum.hpp"
#include "powsum/sets.hpp"

using namespace powsum;

namespace {

// Grids.
constexpr u64 kOracleMaxN = 3000;
constexpr u64 kOracleMaxK = 60;
constexpr u64 kPrimeModulusMax = 500;
constexpr u64 kPhiHalfScan = 100'000;
constexpr u64 kPhiHalfNaiveMax = 2000;
constexpr u64 kLambdaHalfMax = 5000;
constexpr u64 kComplementScan = 100'000;

// Density reproductions.
constexpr u64 kPrimeBound = 300;
const Rational kAffineTargetLo(50801, 100000);
const Rational kAffineTargetHi(50966, 100000);
const Rational kAntiKorseltTargetLo(25801, 100000);
const Rational kAntiKorseltTargetHi(259652, 1000000);
constexpr u64 kSupremumK = 22;
const Rational kSupremumCeiling(647, 1000);

// Empirical scans.
constexpr u64 kEmpiricalLimit = 10'000'000;
const Rational kAffineEmpiricalLo(505, 1000), kAffineEmpiricalHi(513, 1000);
const Rational kAntiKorseltEmpiricalLo(255, 1000), kAntiKorseltEmpiricalHi(263, 1000);
const Rational kFrakPEmpiricalLo(376, 1000), kFrakPEmpiricalHi(383, 1000);
constexpr u64 kExactEmpiricalLimit = 1'000'000;
const Rational kExactEmpiricalTolerance(1, 100);

unsigned worker_threads() { return std::max(1U, std::thread::hardware_concurrency()); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string dec(const Rational& r) { return r.to_decimal(6); }

// --------------------------------------------------------------------------

Outcome oracle_equivalence() {
    u64 mismatches = 0, cases = 0;
    std::string first;
    for (u64 n = 1; n <= kOracleMaxN; ++n) {
        const auto table = oracle::power_sums_mod(n, kOracleMaxK);
        for (u64 k = 1; k <= kOracleMaxK; ++k) {
            const PowerSumQuery q(n, k);
            const bool ok = power_sum_mod_fast(q) == table[k - 1] && divides_power_sum(q) == (table[k - 1] == 0);
            ++cases;
            if (!ok && mismatches++ == 0) {
                first = "n=" + std::to_string(n) + " k=" + std::to_string(k);
            }
        }
    }
    return {mismatches == 0, std::to_string(cases) + " pairs, " + std::to_string(mismatches) + " mismatches" +
                                 (first.empty() ? "" : ", first " + first)};
}

Outcome von_staudt() {
    u64 mismatches = 0, cases = 0;
    std::string first;
    for (u64 n = 2; n <= kOracleMaxN; n += 2) {
        const auto table = oracle::power_sums_mod(n, kOracleMaxK);
        for (u64 k = 2; k <= kOracleMaxK; ++k) {
            ++cases;
            if (carlitz_von_staudt_residue(PowerSumQuery(n, k)) != table[k - 1] && mismatches++ == 0) {
                first = "n=" + std::to_string(n) + " k=" + std::to_string(k);
            }
        }
    }
    return {mismatches == 0, std::to_string(cases) + " pairs, " + std::to_string(mismatches) + " mismatches" +
                                 (first.empty() ? "" : ", first " + first)};
}

Outcome prime_moduli() {
    u64 mismatches = 0, cases = 0;
    for (u64 p = 2; p <= kPrimeModulusMax; ++p) {
        if (!oracle::is_prime(p)) {
            continue;
        }
        for (u64 k = 1; k <= kOracleMaxK; ++k) {
            const u64 expected = k % (p - 1) == 0 ? p - 1 : 0;
            ++cases;
            mismatches += power_sum_mod_fast(PowerSumQuery(p, k)) != expected;
        }
    }
    return {mismatches == 0, std::to_string(cases) + " pairs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome phi_half() {
    const auto got = enumerate(SetDescriptor::phi_half(), kPhiHalfScan, {.threads = worker_threads()});
    const auto expected = oracle::odd_prime_powers(kPhiHalfScan);
    u64 naive_mismatches = 0;
    for (u64 n = 3; n <= kPhiHalfNaiveMax; ++n) {
        const u64 phi = oracle::phi(n);
        naive_mismatches += member(SetDescriptor::phi_half(), n) != (oracle::power_sum_mod(n, phi / 2) == 0);
    }
    const bool ok = got == expected && naive_mismatches == 0;
    return {ok, std::to_string(got.size()) + " members vs " + std::to_string(expected.size()) +
                    " odd prime powers; " + std::to_string(naive_mismatches) + " direct-sum mismatches for n <= " +
                    std::to_string(kPhiHalfNaiveMax)};
}

Outcome lambda_half() {
    u64 mismatches = 0, naive_mismatches = 0;
    for (u64 n = 3; n <= kLambdaHalfMax; ++n) {
        const bool formula = member_lambda_half_by_formula(n);
        mismatches += formula != member(SetDescriptor::lambda_half(), n);
        const u64 lambda = carmichael_lambda(n);
        naive_mismatches += formula != (oracle::power_sum_mod(n, lambda / 2) == 0);
    }
    const bool exclusions = !member_lambda_half_by_formula(12) && !member_lambda_half_by_formula(24);
    return {mismatches == 0 && naive_mismatches == 0 && exclusions,
            std::to_string(mismatches) + " formula/divisibility and " + std::to_string(naive_mismatches) +
                " formula/direct-sum mismatches; 12 and 24 excluded: " + (exclusions ? "yes" : "no")};
}

Outcome affine_interval() {
    const auto plus = affine_density_enclosure(1, 1, kPrimeBound);
    const auto minus = affine_density_enclosure(1, -1, kPrimeBound);
    const bool width = plus.width() <= Rational(1, static_cast<long>(kPrimeBound));
    const bool hits = plus.intersects(kAffineTargetLo, kAffineTargetHi);
    const bool same = plus.lower == minus.lower && plus.upper == minus.upper;
    return {width && hits && same, "[" + dec(plus.lower) + ", " + dec(plus.upper) + "], width " +
                                       dec(plus.width()) + ", b = -1 identical: " + (same ? "yes" : "no")};
}

Outcome anti_korselt_interval() {
    const auto ak = anti_korselt_enclosure(kPrimeBound);
    const auto base = affine_density_enclosure(1, -1, kPrimeBound);
    const bool hits = ak.intersects(kAntiKorseltTargetLo, kAntiKorseltTargetHi);
    const Rational quarter(1, 4);
    const bool shifted = ak.lower == base.lower - quarter && ak.upper == base.upper - quarter;
    return {hits && shifted,
            "[" + dec(ak.lower) + ", " + dec(ak.upper) + "], shift by exactly 1/4: " + (shifted ? "yes" : "no")};
}

Outcome supremum() {
    const auto seq = supremum_sequence(kSupremumK);
    bool monotone = true;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        monotone = monotone && seq[i] <= seq[i - 1];
    }
    const bool below = seq.back() < kSupremumCeiling;
    return {below && monotone, "value(" + std::to_string(kSupremumK) + ") = " + dec(seq.back()) + " = " +
                                   seq.back().str() + ", non-increasing: " + (monotone ? "yes" : "no")};
}

Outcome empirical() {
    const ScanOptions opts{.cap = kEmpiricalLimit, .threads = worker_threads()};
    const auto affine = empirical_density(SetDescriptor::affine(1, 1), kEmpiricalLimit, opts);
    const auto ak = empirical_density(SetDescriptor::anti_korselt(), kEmpiricalLimit, opts);
    const auto fp = empirical_density(SetDescriptor::frak_p(), kEmpiricalLimit, opts);
    const bool affine_ok = kAffineEmpiricalLo <= affine && affine <= kAffineEmpiricalHi;
    const bool ak_ok = kAntiKorseltEmpiricalLo <= ak && ak <= kAntiKorseltEmpiricalHi;
    const bool fp_ok = kFrakPEmpiricalLo <= fp && fp <= kFrakPEmpiricalHi;
    auto mark = [](bool ok) { return ok ? " ok" : " OUT"; };
    return {affine_ok && ak_ok && fp_ok, "affine(1,1) " + dec(affine) + mark(affine_ok) + ", anti-Korselt " + dec(ak) +
                                             mark(ak_ok) + ", frak-p " + dec(fp) + mark(fp_ok) +
                                             "; 2*frak-p - 1/2 = " + dec(fp + fp - Rational(1, 2))};
}

Outcome exact_cases() {
    const auto iii = affine_density_enclosure(2, 1, kPrimeBound);
    const auto iv = affine_density_enclosure(1, 2, kPrimeBound);
    const bool exact = iii.lower == Rational(3, 4) && iii.upper == Rational(3, 4) && iv.lower == Rational(1, 2) &&
                       iv.upper == Rational(1, 2);
    const ScanOptions opts{.threads = worker_threads()};
    const Rational gap_iii = empirical_density(SetDescriptor::affine(2, 1), kExactEmpiricalLimit, opts) - iii.upper;
    const Rational gap_iv = empirical_density(SetDescriptor::affine(1, 2), kExactEmpiricalLimit, opts) - iv.upper;
    auto abs = [](const Rational& r) { return r.sign() < 0 ? -r : r; };
    const bool close = abs(gap_iii) <= kExactEmpiricalTolerance && abs(gap_iv) <= kExactEmpiricalTolerance;
    return {exact && close, "[" + iii.lower.str() + ", " + iii.upper.str() + "] and [" + iv.lower.str() + ", " +
                                iv.upper.str() + "]; empirical gaps " + dec(gap_iii) + ", " + dec(gap_iv)};
}

Outcome lambda_half_decay() {
    std::vector<Rational> values;
    const ScanOptions opts{.threads = worker_threads()};
    for (u64 limit = 1000; limit <= 1'000'000; limit *= 10) {
        values.push_back(empirical_density(SetDescriptor::lambda_half(), limit, opts));
    }
    bool decreasing = true;
    std::string shown;
    for (std::size_t i = 0; i < values.size(); ++i) {
        shown += (i ? ", " : "") + dec(values[i]);
        if (i > 0) {
            decreasing = decreasing && values[i] < values[i - 1];
        }
    }
    return {decreasing, "10^3..10^6: " + shown};
}

Outcome odd_complements() {
    u64 mismatches = 0, cases = 0, outside = 0;
    std::string first;
    for (i64 b : {1, -1, 3}) {
        const auto set = SetDescriptor::affine(1, b);
        const auto complement = affine_complement(1, b, kComplementScan);
        for (u64 n = 1; n <= kComplementScan; n += 2) {
            const auto m = classify(set, n);
            bool ok = complement.contains(n) == !m.member;
            if (m.out_of_domain) {
                ++outside;  // exponent n + b < 1: a non-member with no prime divisor to cover it
            } else {
                bool by_divisor = false;
                for (u64 p : oracle::prime_divisors(n)) {
                    by_divisor = by_divisor || g_progression(p, b).contains(n);
                }
                ok = ok && by_divisor == !m.member;
            }
            ++cases;
            if (!ok && mismatches++ == 0) {
                first = "b=" + std::to_string(b) + " n=" + std::to_string(n);
            }
        }
    }
    return {mismatches == 0, std::to_string(cases) + " odd n (" + std::to_string(outside) +
                                 " with exponent < 1), " + std::to_string(mismatches) + " mismatches" +
                                 (first.empty() ? "" : ", first " + first)};
}

} // namespace

// Usage: acceptance [--expect-red N]...
// A criterion named with --expect-red still prints FAIL; the exit status is
// 0 only when the failing set is exactly the expected set.
int main(int argc, char** argv) {
    std::vector<std::size_t> expected_red;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (std::string(argv[i]) == "--expect-red") {
            expected_red.push_back(std::stoul(argv[i + 1]));
        }
    }
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle equivalence, n <= 3000, k <= 60", oracle_equivalence},
        {"von Staudt residue equals direct sum, even n <= 3000, 2 <= k <= 60", von_staudt},
        {"prime modulus residue is p - 1 or 0, p <= 500, k <= 60", prime_moduli},
        {"phi/2 set is the odd prime powers <= 10^5", phi_half},
        {"lambda/2 structural formula, 3 <= n <= 5000", lambda_half},
        {"affine(1, +-1) enclosure at P = 300 meets [0.50801, 0.50966]", affine_interval},
        {"anti-Korselt enclosure at P = 300 meets [0.25801, 0.259652]", anti_korselt_interval},
        {"supremum bound at k = 22 below 0.647, non-increasing", supremum},
        {"empirical densities at 10^7", empirical},
        {"exact mixed-parity affine densities", exact_cases},
        {"lambda/2 empirical density strictly decreasing", lambda_half_decay},
        {"odd complements from progressions match membership, n <= 10^5", odd_complements},
    };
    std::vector<std::size_t> red;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        const bool expected = std::find(expected_red.begin(), expected_red.end(), i + 1) != expected_red.end();
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1 < 10 ? " " : "") << i + 1 << "  "
                  << criteria[i].first << "  (" << o.detail << "; " << timing << ")"
                  << (!o.pass && expected ? "  [known red, see README]" : "") << std::endl;
        if (!o.pass) {
            red.push_back(i + 1);
        }
    }
    std::sort(expected_red.begin(), expected_red.end());
    std::cout << criteria.size() - red.size() << " of " << criteria.size() << " criteria passed";
    if (!red.empty()) {
        std::cout << "; failing:";
        for (auto r : red) {
            std::cout << ' ' << r;
        }
    }
    std::cout << '\n';
    if (red != expected_red) {
        std::cout << "failing set differs from the expected set\n";
        return 1;
    }
    return 0;
}
