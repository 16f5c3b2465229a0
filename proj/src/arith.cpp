#include "powsum/arith.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace powsum {

namespace {

constexpr u64 kTrialDivisionLimit = 1'000'000;
// Trial division in factorize() stops here; rho takes the cofactor.
constexpr u64 kTrialPrimeBound = 1U << 16;

const std::vector<u64>& small_primes() {
    static const std::vector<u64> primes = [] {
        std::vector<bool> composite(kTrialDivisionLimit + 1, false);
        std::vector<u64> out;
        for (u64 i = 2; i <= kTrialDivisionLimit; ++i) {
            if (composite[i]) {
                continue;
            }
            out.push_back(i);
            for (u64 j = i * i; j <= kTrialDivisionLimit; j += i) {
                composite[j] = true;
            }
        }
        return out;
    }();
    return primes;
}

bool miller_rabin_round(u64 n, u64 d, unsigned s, u64 a) {
    a %= n;
    if (a == 0) {
        return true;
    }
    u64 x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) {
        return true;
    }
    for (unsigned r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) {
            return true;
        }
    }
    return false;
}

// Brent's variant of Pollard rho. n is odd, composite, and has no factor
// below the trial-division limit.
u64 pollard_brent(u64 n) {
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
        u64 y = 2;
        u64 x = y;
        u64 g = 1;
        u64 q = 1;
        u64 ys = y;
        constexpr u64 m = 128;
        for (u64 r = 1; g == 1; r <<= 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) {
                y = f(y);
            }
            for (u64 k = 0; k < r && g == 1; k += m) {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) {
            return g;
        }
    }
}

void split_large(u64 n, std::vector<PrimePower>& out) {
    if (n == 1) {
        return;
    }
    if (is_prime(n)) {
        out.push_back({n, 1});
        return;
    }
    const u64 d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

} // namespace

Factorization::Factorization(std::vector<PrimePower> parts) {
    std::sort(parts.begin(), parts.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    for (const auto& pp : parts) {
        if (pp.exponent == 0) {
            continue;
        }
        if (!parts_.empty() && parts_.back().prime == pp.prime) {
            parts_.back().exponent += pp.exponent;
        } else {
            parts_.push_back(pp);
        }
    }
}

u64 Factorization::value() const {
    u64 v = 1;
    for (const auto& [p, e] : parts_) {
        for (unsigned i = 0; i < e; ++i) {
            if (v > std::numeric_limits<u64>::max() / p) {
                throw std::overflow_error("Factorization::value exceeds 64 bits");
            }
            v *= p;
        }
    }
    return v;
}

unsigned Factorization::exponent_of(u64 p) const noexcept {
    for (const auto& pp : parts_) {
        if (pp.prime == p) {
            return pp.exponent;
        }
    }
    return 0;
}

u64 mod_pow(u64 base, u64 exponent, u64 modulus) {
    if (modulus == 0) {
        throw std::domain_error("mod_pow: modulus must be positive");
    }
    u64 result = 1 % modulus;
    base %= modulus;
    while (exponent > 0) {
        if (exponent & 1U) {
            result = mul_mod(result, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exponent >>= 1U;
    }
    return result;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

u64 lcm_u64(u64 a, u64 b) {
    if (a == 0 || b == 0) {
        return 0;
    }
    const u64 q = a / std::gcd(a, b);
    if (q > std::numeric_limits<u64>::max() / b) {
        throw std::overflow_error("lcm exceeds 64 bits");
    }
    return q * b;
}

bool is_prime(u64 n) {
    if (n < 2) {
        return false;
    }
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    if (n < 41 * 41) {
        return true;
    }
    const unsigned s = static_cast<unsigned>(std::countr_zero(n - 1));
    const u64 d = (n - 1) >> s;
    // Witness set valid for every n < 2^64.
    for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        if (!miller_rabin_round(n, d, s, a)) {
            return false;
        }
    }
    return true;
}

Factorization factorize(u64 n) {
    if (n == 0) {
        throw std::domain_error("factorize: n must be positive");
    }
    std::vector<PrimePower> parts;
    for (u64 p : small_primes()) {
        if (p * p > n || p > kTrialPrimeBound) {
            break;
        }
        if (n % p != 0) {
            continue;
        }
        unsigned e = 0;
        do {
            n /= p;
            ++e;
        } while (n % p == 0);
        parts.push_back({p, e});
    }
    if (n > 1) {
        if (n <= kTrialPrimeBound * kTrialPrimeBound) {
            // No factor up to sqrt(n) survived, so n is prime.
            parts.push_back({n, 1});
        } else {
            split_large(n, parts);
        }
    }
    return Factorization(std::move(parts));
}

u64 euler_phi(const Factorization& f) {
    u64 phi = 1;
    for (const auto& [p, e] : f) {
        phi *= p - 1;
        for (unsigned i = 1; i < e; ++i) {
            phi *= p;
        }
    }
    return phi;
}

u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

u64 carmichael_lambda(const Factorization& f) {
    u64 lambda = 1;
    for (const auto& [p, e] : f) {
        u64 part = 0;
        if (p == 2) {
            part = e == 1 ? 1 : e == 2 ? 2 : (u64{1} << (e - 2));
        } else {
            part = p - 1;
            for (unsigned i = 1; i < e; ++i) {
                part *= p;
            }
        }
        lambda = lcm_u64(lambda, part);
    }
    return lambda;
}

u64 carmichael_lambda(u64 n) { return carmichael_lambda(factorize(n)); }

unsigned two_adic_valuation(u64 m) {
    if (m == 0) {
        throw std::domain_error("two_adic_valuation: m must be positive");
    }
    return static_cast<unsigned>(std::countr_zero(m));
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
    std::vector<u64> out;
    if (hi <= kTrialDivisionLimit) {
        const auto& sp = small_primes();
        auto it = std::lower_bound(sp.begin(), sp.end(), lo);
        for (; it != sp.end() && *it <= hi; ++it) {
            out.push_back(*it);
        }
        return out;
    }
    for (u64 n = lo; n <= hi && n >= lo; ++n) {
        if (is_prime(n)) {
            out.push_back(n);
        }
    }
    return out;
}

Congruence::Congruence(const BigInt& r, const BigInt& m) {
    if (m < 1) {
        throw std::domain_error("Congruence: modulus must be positive");
    }
    modulus = m;
    mpz_fdiv_r(residue.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
}

std::optional<Congruence> crt_solve(std::span<const Congruence> system) {
    if (system.empty()) {
        throw std::invalid_argument("crt_solve: empty system");
    }
    BigInt x = system.front().residue;
    BigInt m = system.front().modulus;
    BigInt g, s, t;
    for (const auto& c : system.subspan(1)) {
        // Solve x + m*u = c.residue (mod c.modulus).
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t(), c.modulus.get_mpz_t());
        BigInt diff = c.residue - x;
        if (!mpz_divisible_p(diff.get_mpz_t(), g.get_mpz_t())) {
            return std::nullopt;
        }
        BigInt mod_g = c.modulus / g;
        BigInt u = (diff / g) * s;
        mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), mod_g.get_mpz_t());
        x += m * u;
        m *= mod_g;
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    }
    return Congruence(x, m);
}

} // namespace powsum
