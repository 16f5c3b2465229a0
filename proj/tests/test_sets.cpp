#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "powsum/errors.hpp"
#include "powsum/powersum.hpp"
#include "powsum/sets.hpp"

using namespace powsum;

namespace {

using AP = ArithmeticProgression;

bool covered_by(const std::vector<AP>& aps, u64 n) {
    for (const auto& ap : aps) {
        if (ap.contains(n)) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("progression normalization") {
    CHECK(AP::residue_class(BigInt(-3), 6) == AP{3, 6});
    CHECK(AP::residue_class(BigInt(0), 5) == AP{5, 5});
    CHECK(AP::residue_class(BigInt(14), 4) == AP{2, 4});
    CHECK(AP{3, 6}.contains(9));
    CHECK_FALSE(AP{3, 6}.contains(0));
    CHECK_THROWS_AS(AP::residue_class(BigInt(1), 0), std::domain_error);
}

TEST_CASE("descriptor parsing round-trips") {
    for (const char* text : {"affine:1,1", "affine:2,-3", "anti-korselt", "phi-half", "lambda-half", "frak-p",
                             "upsilon:2", "w:12", "h:4", "affine:0,5"}) {
        CHECK(SetDescriptor::parse(text).str() == text);
    }
    CHECK(SetDescriptor::parse("affine:1,1") == SetDescriptor::affine(1, 1));
    for (const char* bad : {"affine", "affine:1", "affine:x,1", "affine:0,0", "frak-p:2", "upsilon", "upsilon:0",
                            "w:0", "nope", "h:-1"}) {
        CHECK_THROWS_AS(SetDescriptor::parse(bad), std::invalid_argument);
    }
}

TEST_CASE("membership examples") {
    CHECK_FALSE(member(SetDescriptor::affine(1, 1), 9));
    CHECK(oracle::power_sum_mod(9, 10) == 6);  // nonzero, so 9 is not a member
    CHECK(member(SetDescriptor::anti_korselt(), 35));
    CHECK(member(SetDescriptor::phi_half(), 27));
}

TEST_CASE("exponent domain edges") {
    const auto c = classify(SetDescriptor::affine(1, -3), 2);
    CHECK(c.out_of_domain);
    CHECK_FALSE(c.member);
    CHECK(classify(SetDescriptor::phi_half(), 1).out_of_domain);
    CHECK(classify(SetDescriptor::phi_half(), 2).out_of_domain);
    CHECK(classify(SetDescriptor::anti_korselt(), 1).out_of_domain);
    CHECK(classify(SetDescriptor::frak_p(), 1).out_of_domain);
    CHECK(member(SetDescriptor::affine(1, 1), 1));
    CHECK(member(SetDescriptor::affine(1, -3), 4) == false);  // k = 1
    CHECK_FALSE(member(SetDescriptor::upsilon(1), 1));
    CHECK_THROWS_AS(classify(SetDescriptor::affine(1, 1), 0), std::invalid_argument);
}

TEST_CASE("every family agrees with direct summation up to 3000") {
    const std::vector<SetDescriptor> affine{SetDescriptor::affine(1, 1), SetDescriptor::affine(1, -1),
                                            SetDescriptor::affine(1, 3), SetDescriptor::affine(2, 1),
                                            SetDescriptor::affine(1, 2), SetDescriptor::affine(3, -5),
                                            SetDescriptor::affine(0, 4)};
    for (u64 n = 1; n <= 3000; ++n) {
        for (const auto& set : affine) {
            const long long k = static_cast<long long>(set.a * n) + set.b;
            const auto c = classify(set, n);
            if (k < 1) {
                REQUIRE(c.out_of_domain);
                continue;
            }
            INFO(set.str(), " n=", n);
            REQUIRE(c.member == (oracle::power_sum_mod(n, static_cast<u64>(k)) == 0));
        }
        const u64 phi = oracle::phi(n);
        if (phi % 2 == 0) {
            REQUIRE(member(SetDescriptor::phi_half(), n) == (oracle::power_sum_mod(n, phi / 2) == 0));
        }
        const u64 lambda = carmichael_lambda(n);
        if (lambda % 2 == 0) {
            REQUIRE(member(SetDescriptor::lambda_half(), n) == (oracle::power_sum_mod(n, lambda / 2) == 0));
        }
        if (n % 2 == 1 && n > 1) {
            REQUIRE(member(SetDescriptor::frak_p(), n) == (oracle::power_sum_mod(n, (n - 1) / 2) == 0));
        }
        if (n > 1) {
            const bool by_sum = oracle::power_sum_mod(n, n - 1) == 0 && n % 4 != 0;
            REQUIRE(member(SetDescriptor::anti_korselt(), n) == by_sum);
            REQUIRE(member(SetDescriptor::anti_korselt(), n) == oracle::anti_korselt(n));
        }
    }
}

TEST_CASE("fixed-n and fixed-k families agree with direct summation") {
    for (u64 n = 1; n <= 200; ++n) {
        for (u64 k = 1; k <= 60; ++k) {
            const bool d = oracle::power_sum_mod(n, k) == 0;
            REQUIRE(member(SetDescriptor::w(n), k) == d);
            REQUIRE(member(SetDescriptor::h(k), n) == d);
        }
    }
}

TEST_CASE("upsilon families partition the odd lambda/2 members") {
    for (u64 n = 3; n <= 20000; n += 2) {
        unsigned hits = 0;
        for (u64 k = 1; k <= 16; ++k) {
            hits += member(SetDescriptor::upsilon(k), n);
        }
        const auto ps = oracle::prime_divisors(n);
        bool equal = true;
        for (u64 p : ps) {
            equal = equal && oracle::v2(p - 1) == oracle::v2(ps.front() - 1);
        }
        REQUIRE(hits == (equal ? 1U : 0U));
        REQUIRE(member(SetDescriptor::lambda_half(), n) == (hits == 1));
    }
}

TEST_CASE("fixed-n complements") {
    const auto w8 = wn_complement(8);
    CHECK(w8.exact());
    CHECK(w8.progressions == std::vector<AP>{{2, 2}});
    CHECK(w8.points == std::vector<u64>{1});
    CHECK(wn_complement(6).progressions == std::vector<AP>{{1, 1}});
    const auto w15 = wn_complement(15);
    for (u64 k = 1; k <= 40; ++k) {
        CHECK(w15.contains(k) == (k % 2 == 0));
        CHECK(w15.contains(k) == (oracle::power_sum_mod(15, k) != 0));
    }
}

TEST_CASE("fixed-k complements") {
    CHECK(hk_complement(1).progressions == std::vector<AP>{{2, 2}});
    CHECK(hk_complement(3).progressions == std::vector<AP>{{2, 4}});
    const auto h2 = hk_complement(2);
    for (u64 n = 1; n <= 500; ++n) {
        CHECK(h2.contains(n) == (n % 2 == 0 || n % 3 == 0));
    }
}

TEST_CASE("complements agree with divisibility on the grid n <= 500, k <= 60") {
    for (u64 n = 1; n <= 500; ++n) {
        const auto wn = wn_complement(n);
        for (u64 k = 1; k <= 60; ++k) {
            REQUIRE(wn.contains(k) == (oracle::power_sum_mod(n, k) != 0));
        }
    }
    for (u64 k = 1; k <= 60; ++k) {
        const auto hk = hk_complement(k);
        for (u64 n = 1; n <= 500; ++n) {
            REQUIRE(hk.contains(n) == (oracle::power_sum_mod(n, k) != 0));
        }
    }
}

TEST_CASE("xi and affine progressions") {
    CHECK(xi(1, 1, 3) == 3);
    CHECK(xi(1, -1, 5) == 5);
    CHECK(xi(2, 2, 3) == 3);
    CHECK_THROWS_AS(xi(1, 1, 9), std::domain_error);
    CHECK_THROWS_AS(xi(2, 1, 3), std::domain_error);  // gcd(6, 2) does not divide 1
    // Each progression is exactly {n : p | n, (p - 1) | a n + b}.
    for (u64 a : {1ULL, 2ULL, 3ULL, 6ULL}) {
        for (long long b : {-7LL, -1LL, 0LL, 1LL, 2LL, 5LL}) {
            for (u64 p : {3ULL, 5ULL, 7ULL, 13ULL}) {
                const bool solvable = (static_cast<long long>(std::gcd(a * p, p - 1)) != 0) &&
                                      b % static_cast<long long>(std::gcd(a * p, p - 1)) == 0;
                CHECK(in_affine_prime_set(a, b, p) == solvable);
                if (!solvable) {
                    continue;
                }
                const auto ap = affine_prime_progression(a, b, p);
                for (u64 n = 1; n <= 2000; ++n) {
                    const long long k = static_cast<long long>(a * n) + b;
                    const bool expected = n % p == 0 && ((k % static_cast<long long>(p - 1)) + (p - 1)) % (p - 1) == 0;
                    REQUIRE(ap.contains(n) == expected);
                }
            }
        }
    }
}

TEST_CASE("affine complement examples") {
    const auto c = affine_complement(1, 1, 5);
    CHECK(c.progressions == std::vector<AP>{{2, 4}, {3, 6}, {15, 20}});
    CHECK_FALSE(c.exact());
    CHECK(c.tail_bound == Rational(1, 5));
    const auto iii = affine_complement(2, 1, 100);
    CHECK(iii.exact());
    CHECK(iii.progressions == std::vector<AP>{{2, 4}});
    const auto iv = affine_complement(1, 2, 100);
    CHECK(iv.exact());
    CHECK(iv.progressions == std::vector<AP>{{2, 2}});
}

TEST_CASE("affine complement matches membership where the truncation is complete") {
    // With prime bound P every n whose prime factors are all <= P is decided
    // exactly by the truncated union.
    for (const auto& [a, b] : std::vector<std::pair<u64, long long>>{
             {1, 1}, {1, -1}, {1, 3}, {1, -3}, {2, 1}, {1, 2}, {3, 1}, {3, -2}, {2, -4}, {5, 0}}) {
        const u64 bound = 97;
        const auto c = affine_complement(a, b, bound);
        const auto set = SetDescriptor::affine(a, b);
        for (u64 n = 1; n <= 10'000; ++n) {
            const auto ps = oracle::prime_divisors(n);
            if (!ps.empty() && ps.back() > bound) {
                continue;
            }
            const auto m = classify(set, n);
            INFO("a=", a, " b=", b, " n=", n);
            REQUIRE(c.contains(n) == !m.member);
        }
    }
}

TEST_CASE("g and f progressions") {
    CHECK(g_progression(3, 1) == AP{3, 6});
    CHECK(g_progression(5, -1) == AP{5, 20});
    CHECK(g_progression(7, 1) == AP{35, 42});
    CHECK(f_progression(3) == AP{9, 12});
    CHECK(f_progression(5) == AP{25, 40});
    CHECK(f_progression(7) == AP{49, 84});
    CHECK_THROWS_AS(g_progression(9, 1), std::domain_error);
    for (u64 p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 101ULL}) {
        for (long long b : {1LL, -1LL, 3LL, 15LL, -7LL}) {
            const auto g = g_progression(p, b);
            for (u64 n = g.first; n < 100'000; n += g.step) {
                REQUIRE(n % p == 0);
                REQUIRE(((static_cast<long long>(n) + b) % static_cast<long long>(p - 1)) == 0);
            }
        }
        const auto f = f_progression(p);
        for (u64 n = f.first; n < 100'000; n += f.step) {
            REQUIRE(n % 2 == 1);
            REQUIRE(n % (2 * (p - 1)) == 1);
            REQUIRE(n % p == 0);
        }
    }
}

TEST_CASE("admissibility") {
    CHECK(in_R(15, 1));
    CHECK_FALSE(in_R(21, 1));
    CHECK(in_R(21, 3));
    CHECK_FALSE(in_R(2, 1));
    for (u64 m = 3; m <= 2000; ++m) {
        for (long long b : {1LL, -1LL, 3LL, 15LL}) {
            const u64 g = std::gcd(m, oracle::phi(m));
            REQUIRE(in_R(m, b) == (b % static_cast<long long>(g) == 0));
        }
    }
}

TEST_CASE("g intersections") {
    const std::vector<u64> p35{3, 5};
    const auto i35 = intersect_g(p35, 1);
    REQUIRE(i35);
    CHECK(*i35 == AP{15, 60});
    const std::vector<u64> p37{3, 7};
    CHECK_FALSE(intersect_g(p37, 1));
    const std::vector<u64> p3{3};
    CHECK(intersect_g(p3, 1) == g_progression(3, 1));
}

TEST_CASE("g intersections are nonempty exactly for admissible products") {
    const std::vector<u64> base{3, 5, 7, 11, 13};
    for (long long b : {1LL, -1LL, 3LL, 15LL}) {
        for (unsigned mask = 1; mask < 32; ++mask) {
            std::vector<u64> primes;
            u64 m = 1;
            for (unsigned i = 0; i < 5; ++i) {
                if (mask >> i & 1U) {
                    primes.push_back(base[i]);
                    m *= base[i];
                }
            }
            const auto ap = intersect_g(primes, b);
            const u64 g = std::gcd(m, oracle::phi(m));
            REQUIRE(ap.has_value() == (b % static_cast<long long>(g) == 0));
            std::vector<AP> parts;
            for (u64 p : primes) {
                parts.push_back(g_progression(p, b));
            }
            const u64 window = ap ? 3 * ap->step : 200'000;
            for (u64 n = 1; n <= window; ++n) {
                bool all = true;
                for (const auto& part : parts) {
                    all = all && part.contains(n);
                }
                REQUIRE(all == (ap && ap->contains(n)));
            }
        }
    }
}

TEST_CASE("f intersections double the g steps for b = 1 and b = -1") {
    const std::vector<u64> base{3, 5, 7, 11, 13};
    for (long long b : {1LL, -1LL}) {
        for (unsigned mask = 1; mask < 32; ++mask) {
            std::vector<u64> primes;
            for (unsigned i = 0; i < 5; ++i) {
                if (mask >> i & 1U) {
                    primes.push_back(base[i]);
                }
            }
            const auto g = intersect_g(primes, b);
            const auto f = intersect_f(primes);
            REQUIRE(g.has_value() == f.has_value());
            if (g) {
                REQUIRE(f->step == 2 * g->step);
            }
        }
    }
    // The doubling does not extend to every odd b.
    const std::vector<u64> p37{3, 7};
    CHECK(intersect_g(p37, 3).has_value());
    CHECK_FALSE(intersect_f(p37).has_value());
}

TEST_CASE("odd non-members are exactly the g-covered numbers") {
    for (long long b : {1LL, -1LL, 3LL}) {
        const auto set = SetDescriptor::affine(1, b);
        for (u64 n = 1; n <= 100'000; n += 2) {
            const auto m = classify(set, n);
            if (m.out_of_domain) {
                continue;
            }
            bool covered = false;
            for (u64 p : oracle::prime_divisors(n)) {
                covered = covered || g_progression(p, b).contains(n);
            }
            REQUIRE(covered == !m.member);
        }
    }
}

TEST_CASE("lambda/2 formula") {
    CHECK(member_lambda_half_by_formula(21));
    CHECK_FALSE(member_lambda_half_by_formula(12));
    CHECK_FALSE(member_lambda_half_by_formula(24));
    CHECK(member_lambda_half_by_formula(28));
    for (u64 n = 3; n <= 5000; ++n) {
        REQUIRE(member_lambda_half_by_formula(n) == member(SetDescriptor::lambda_half(), n));
    }
    for (u64 m = 1; m <= 40; ++m) {
        CHECK_FALSE(member(SetDescriptor::lambda_half(), u64{1} << m));
    }
}

TEST_CASE("enumeration examples") {
    CHECK(enumerate(SetDescriptor::anti_korselt(), 100) == std::vector<u64>{35, 55, 77, 95});
    CHECK(enumerate(SetDescriptor::phi_half(), 30) ==
          std::vector<u64>{3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29});
    CHECK(enumerate(SetDescriptor::affine(1, 2), 12) == std::vector<u64>{1, 3, 5, 7, 9, 11});
    CHECK(enumerate(SetDescriptor::w(8), 10) == std::vector<u64>{3, 5, 7, 9});
    CHECK_THROWS_AS(enumerate(SetDescriptor::frak_p(), 1000, {.cap = 999}), CapExceeded);
}

TEST_CASE("phi/2 set is the odd prime powers") {
    CHECK(enumerate(SetDescriptor::phi_half(), 100'000) == oracle::odd_prime_powers(100'000));
}

TEST_CASE("enumeration is independent of thread count") {
    for (const auto& set : {SetDescriptor::affine(1, 1), SetDescriptor::frak_p(), SetDescriptor::lambda_half(),
                            SetDescriptor::w(60)}) {
        const auto one = enumerate(set, 200'000, {.threads = 1});
        for (unsigned t : {2U, 3U, 8U}) {
            REQUIRE(enumerate(set, 200'000, {.threads = t}) == one);
            REQUIRE(count_members(set, 200'000, {.threads = t}) == one.size());
        }
        for (u64 n : one) {
            if (n > 5000) {
                break;
            }
            REQUIRE(member(set, n));
        }
    }
}
