#include "powsum/verify.hpp"

#include <functional>
#include <optional>
#include <stdexcept>

#include "powsum/density.hpp"
#include "powsum/powersum.hpp"
#include "powsum/sets.hpp"

namespace powsum {

namespace {

class Recorder {
public:
    explicit Recorder(std::string name) { check_.name = std::move(name); }

    void expect(bool ok, const std::function<std::string()>& describe) {
        ++check_.cases;
        if (ok) {
            return;
        }
        check_.passed = false;
        if (check_.counterexamples.size() < kMaxCounterexamples) {
            check_.counterexamples.push_back(describe());
        }
    }

    Check done() { return std::move(check_); }

private:
    Check check_;
};

std::string nk(u64 n, u64 k) { return "n=" + std::to_string(n) + " k=" + std::to_string(k); }

// ------------------------------------------------------------------ oracle

Check fast_matches_naive(const VerifyBudget& bu) {
    Recorder r("fast residue equals direct summation");
    for (u64 n = 1; n <= bu.oracle_n; ++n) {
        for (u64 k = 1; k <= bu.oracle_k; ++k) {
            const PowerSumQuery q(n, k);
            const u64 fast = power_sum_mod_fast(q);
            const u64 slow = power_sum_mod_naive(q);
            r.expect(fast == slow, [&] {
                return nk(n, k) + " fast=" + std::to_string(fast) + " naive=" + std::to_string(slow);
            });
        }
    }
    return r.done();
}

Check divisibility_matches_residue(const VerifyBudget& bu) {
    Recorder r("divisibility decision equals residue zero");
    for (u64 n = 1; n <= bu.oracle_n; ++n) {
        for (u64 k = 1; k <= bu.oracle_k; ++k) {
            const PowerSumQuery q(n, k);
            const bool decided = divides_power_sum(q);
            r.expect(decided == (power_sum_mod_naive(q) == 0), [&] { return nk(n, k); });
        }
    }
    return r.done();
}

Check von_staudt_matches_naive(const VerifyBudget& bu) {
    Recorder r("von Staudt residue for even n");
    for (u64 n = 2; n <= bu.oracle_n; n += 2) {
        for (u64 k = 2; k <= bu.oracle_k; ++k) {
            const PowerSumQuery q(n, k);
            r.expect(carlitz_von_staudt_residue(q) == power_sum_mod_naive(q), [&] { return nk(n, k); });
        }
    }
    return r.done();
}

// -------------------------------------------------------------------- sets

const std::vector<u64> kSmallPrimes{3, 5, 7, 11, 13};
const std::vector<i64> kIntersectionOffsets{1, -1, 3, 15};

std::vector<u64> subset_of(const std::vector<u64>& base, unsigned mask) {
    std::vector<u64> out;
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (mask >> i & 1U) {
            out.push_back(base[i]);
        }
    }
    return out;
}

std::string list(const std::vector<u64>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s + "}";
}

Check intersections_match_admissibility() {
    Recorder r("g-progression intersections vs admissible products");
    for (i64 b : kIntersectionOffsets) {
        for (unsigned mask = 1; mask < (1U << kSmallPrimes.size()); ++mask) {
            const auto primes = subset_of(kSmallPrimes, mask);
            u64 m = 1;
            for (u64 p : primes) {
                m *= p;
            }
            const auto ap = intersect_g(primes, b);
            const auto tag = [&] { return "b=" + std::to_string(b) + " primes=" + list(primes); };
            r.expect(ap.has_value() == in_R(m, b), tag);
            if (!ap) {
                continue;
            }
            std::vector<ArithmeticProgression> parts;
            for (u64 p : primes) {
                parts.push_back(g_progression(p, b));
            }
            for (u64 n = 1; n <= 3 * ap->step; ++n) {
                bool in_all = true;
                for (const auto& g : parts) {
                    in_all = in_all && g.contains(n);
                }
                r.expect(in_all == ap->contains(n), [&] { return tag() + " n=" + std::to_string(n); });
            }
        }
    }
    return r.done();
}

Check f_steps_double_g_steps() {
    Recorder r("f-intersection step is twice the g-intersection step for b = 1, -1");
    for (i64 b : {i64{1}, i64{-1}}) {
        for (unsigned mask = 1; mask < (1U << kSmallPrimes.size()); ++mask) {
            const auto primes = subset_of(kSmallPrimes, mask);
            const auto g = intersect_g(primes, b);
            const auto f = intersect_f(primes);
            const bool ok = g.has_value() == f.has_value() && (!g || f->step == 2 * g->step);
            r.expect(ok, [&] { return "b=" + std::to_string(b) + " primes=" + list(primes); });
        }
    }
    return r.done();
}

Check phi_half_is_odd_prime_powers(const VerifyBudget& bu) {
    Recorder r("phi/2 set equals odd prime powers");
    const auto members = enumerate(SetDescriptor::phi_half(), bu.scan_limit, {.threads = bu.threads});
    std::vector<bool> is_power(bu.scan_limit + 1, false);
    for (u64 p : primes_in_range(3, bu.scan_limit)) {
        for (u64 q = p; q <= bu.scan_limit; q *= p) {
            is_power[q] = true;
            if (q > bu.scan_limit / p) {
                break;
            }
        }
    }
    std::vector<u64> expected;
    for (u64 n = 1; n <= bu.scan_limit; ++n) {
        if (is_power[n]) {
            expected.push_back(n);
        }
    }
    r.expect(members == expected, [&] {
        return std::to_string(members.size()) + " members vs " + std::to_string(expected.size()) +
               " odd prime powers";
    });
    return r.done();
}

Check lambda_half_formula() {
    Recorder r("lambda/2 structural formula vs divisibility");
    for (u64 n = 3; n <= 5000; ++n) {
        const bool formula = member_lambda_half_by_formula(n);
        r.expect(formula == member(SetDescriptor::lambda_half(), n), [&] { return "n=" + std::to_string(n); });
    }
    return r.done();
}

Check odd_complement_is_g_cover(const VerifyBudget& bu) {
    Recorder r("odd non-members are exactly those covered by a g-progression of a divisor");
    for (i64 b : {i64{1}, i64{-1}, i64{3}}) {
        const auto set = SetDescriptor::affine(1, b);
        for (u64 n = 1; n <= bu.scan_limit; n += 2) {
            const auto c = classify(set, n);
            if (c.out_of_domain) {
                continue;
            }
            bool covered = false;
            for (const auto& pp : factorize(n)) {
                covered = covered || g_progression(pp.prime, b).contains(n);
            }
            r.expect(!c.member == covered,
                     [&] { return "b=" + std::to_string(b) + " n=" + std::to_string(n); });
        }
    }
    return r.done();
}

Check complements_match_grid() {
    Recorder r("fixed-n and fixed-k complements vs divisibility");
    for (u64 n = 1; n <= 500; ++n) {
        const auto wn = wn_complement(n);
        for (u64 k = 1; k <= 60; ++k) {
            const bool divides = divides_power_sum(PowerSumQuery(n, k));
            r.expect(wn.contains(k) == !divides, [&] { return "w " + nk(n, k); });
        }
    }
    for (u64 k = 1; k <= 60; ++k) {
        const auto hk = hk_complement(k);
        for (u64 n = 1; n <= 500; ++n) {
            const bool divides = divides_power_sum(PowerSumQuery(n, k));
            r.expect(hk.contains(n) == !divides, [&] { return "h " + nk(n, k); });
        }
    }
    return r.done();
}

// ----------------------------------------------------------------- density

Check enclosures_nest(const VerifyBudget& bu) {
    Recorder r("enclosures nest as the prime bound grows");
    for (i64 b : {i64{1}, i64{-1}, i64{3}}) {
        std::optional<DensityEnclosure> previous;
        for (u64 p : primes_in_range(3, bu.prime_bound)) {
            const auto e = affine_density_enclosure(1, b, p);
            if (previous) {
                r.expect(e.nested_in(*previous),
                         [&] { return "b=" + std::to_string(b) + " P=" + std::to_string(p); });
            }
            previous = e;
        }
    }
    return r.done();
}

Check tails_are_sound(const VerifyBudget& bu) {
    Recorder r("enclosure width within the tail bound");
    for (i64 b : {i64{1}, i64{-1}, i64{3}, i64{15}}) {
        for (u64 p : primes_in_range(3, bu.prime_bound)) {
            const auto e = affine_density_enclosure(1, b, p);
            const bool ok = e.lower.sign() >= 0 && e.lower <= e.upper && e.upper <= Rational(1) &&
                            e.width() <= prime_tail_bound(p);
            r.expect(ok, [&] { return "b=" + std::to_string(b) + " P=" + std::to_string(p); });
        }
    }
    return r.done();
}

Check elimination_matches_inclusion_exclusion(const VerifyBudget& bu) {
    Recorder r("progression-union density vs admissible inclusion-exclusion sum");
    for (i64 b : {i64{1}, i64{-1}, i64{3}, i64{15}}) {
        const auto e = affine_density_enclosure(1, b, bu.prime_bound);
        const auto s = admissible_pie_sum(b, bu.prime_bound);
        r.expect(e.upper == Rational(3, 4) + s.sum, [&] { return "b=" + std::to_string(b); });
    }
    return r.done();
}

Check sign_symmetry_and_shift(const VerifyBudget& bu) {
    Recorder r("b = 1 and b = -1 agree; anti-Korselt is the shift by 1/4");
    const auto plus = affine_density_enclosure(1, 1, bu.prime_bound);
    const auto minus = affine_density_enclosure(1, -1, bu.prime_bound);
    r.expect(plus.lower == minus.lower && plus.upper == minus.upper, [] { return std::string("bounds differ"); });
    const auto ak = anti_korselt_enclosure(bu.prime_bound);
    r.expect(ak.upper == minus.upper - Rational(1, 4), [] { return std::string("upper not shifted"); });
    return r.done();
}

Check exact_parity_cases() {
    Recorder r("mixed-parity affine sets are exact");
    const auto even_a = affine_density_enclosure(2, 1, 50);
    r.expect(even_a.lower == Rational(3, 4) && even_a.upper == Rational(3, 4), [] { return std::string("(2,1)"); });
    const auto even_b = affine_density_enclosure(1, 2, 50);
    r.expect(even_b.lower == Rational(1, 2) && even_b.upper == Rational(1, 2), [] { return std::string("(1,2)"); });
    return r.done();
}

void append(std::vector<Check>& out, std::vector<Check> more) {
    for (auto& c : more) {
        out.push_back(std::move(c));
    }
}

std::vector<Check> oracle_suite(const VerifyBudget& bu) {
    return {fast_matches_naive(bu), divisibility_matches_residue(bu), von_staudt_matches_naive(bu)};
}

std::vector<Check> sets_suite(const VerifyBudget& bu) {
    return {intersections_match_admissibility(), f_steps_double_g_steps(), phi_half_is_odd_prime_powers(bu),
            lambda_half_formula(), odd_complement_is_g_cover(bu), complements_match_grid()};
}

std::vector<Check> density_suite(const VerifyBudget& bu) {
    return {enclosures_nest(bu), tails_are_sound(bu), elimination_matches_inclusion_exclusion(bu),
            sign_symmetry_and_shift(bu), exact_parity_cases()};
}

} // namespace

std::vector<Check> run_suite(std::string_view suite, const VerifyBudget& budget) {
    if (budget.prime_bound < 3) {
        throw std::invalid_argument("verify: prime bound must be >= 3");
    }
    if (suite == "oracle") {
        return oracle_suite(budget);
    }
    if (suite == "sets") {
        return sets_suite(budget);
    }
    if (suite == "density") {
        return density_suite(budget);
    }
    if (suite == "all") {
        auto out = oracle_suite(budget);
        append(out, sets_suite(budget));
        append(out, density_suite(budget));
        return out;
    }
    throw std::invalid_argument("unknown verify suite '" + std::string(suite) + "'");
}

bool all_passed(const std::vector<Check>& checks) {
    for (const auto& c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

} // namespace powsum
