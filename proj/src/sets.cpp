#include "powsum/sets.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <stdexcept>

#include "powsum/errors.hpp"
#include "powsum/parallel.hpp"
#include "powsum/powersum.hpp"
#include "powsum/sieve.hpp"

namespace powsum {

namespace {

using i128 = __int128;

u64 to_u64(const BigInt& v, const char* what) {
    if (v < 0 || !v.fits_ulong_p()) {
        throw std::overflow_error(std::string(what) + " exceeds 64 bits");
    }
    return v.get_ui();
}

BigInt big(u64 v) { return BigInt(static_cast<unsigned long>(v)); }
BigInt big(i64 v) { return BigInt(static_cast<long>(v)); }

void require_odd_prime(u64 p, const char* where) {
    if (p < 3 || !is_prime(p)) {
        throw std::domain_error(std::string(where) + ": " + std::to_string(p) + " is not an odd prime");
    }
}

Membership defined(bool m) { return {m, false}; }
Membership undefined() { return {false, true}; }

u64 parse_u64(std::string_view s, const std::string& whole) {
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad number '" + std::string(s) + "' in set descriptor '" + whole + "'");
    }
    return v;
}

i64 parse_i64(std::string_view s, const std::string& whole) {
    i64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad number '" + std::string(s) + "' in set descriptor '" + whole + "'");
    }
    return v;
}

void add_unique(std::vector<ArithmeticProgression>& out, ArithmeticProgression ap) {
    if (std::find(out.begin(), out.end(), ap) == out.end()) {
        out.push_back(ap);
    }
}

} // namespace

// ---------------------------------------------------------------- progressions

ArithmeticProgression ArithmeticProgression::residue_class(const BigInt& residue, u64 step) {
    if (step == 0) {
        throw std::domain_error("residue_class: step must be positive");
    }
    BigInt r;
    BigInt shifted = residue - 1;
    const BigInt s = big(step);
    mpz_fdiv_r(r.get_mpz_t(), shifted.get_mpz_t(), s.get_mpz_t());
    return {r.get_ui() + 1, step};
}

Congruence ArithmeticProgression::congruence() const { return Congruence(big(first), big(step)); }

bool ProgressionUnion::contains(u64 n) const {
    if (std::find(points.begin(), points.end(), n) != points.end()) {
        return true;
    }
    return std::any_of(progressions.begin(), progressions.end(),
                       [n](const ArithmeticProgression& ap) { return ap.contains(n); });
}

// ---------------------------------------------------------------- descriptors

SetDescriptor SetDescriptor::upsilon(u64 k) {
    if (k == 0) {
        throw std::invalid_argument("upsilon: k must be >= 1");
    }
    return {Family::Upsilon, 0, 0, k};
}

SetDescriptor SetDescriptor::w(u64 n) {
    if (n == 0) {
        throw std::invalid_argument("w: n must be >= 1");
    }
    return {Family::W, 0, 0, n};
}

SetDescriptor SetDescriptor::h(u64 k) {
    if (k == 0) {
        throw std::invalid_argument("h: k must be >= 1");
    }
    return {Family::H, 0, 0, k};
}

SetDescriptor SetDescriptor::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    const bool has_args = colon != std::string::npos;
    auto no_args = [&](SetDescriptor d) {
        if (has_args) {
            throw std::invalid_argument("set '" + name + "' takes no parameters");
        }
        return d;
    };
    auto one_arg = [&]() {
        if (!has_args) {
            throw std::invalid_argument("set '" + name + "' needs a parameter, e.g. '" + name + ":2'");
        }
        return parse_u64(args, text);
    };
    if (name == "affine") {
        const auto comma = args.find(',');
        if (!has_args || comma == std::string::npos) {
            throw std::invalid_argument("affine set needs 'affine:a,b'");
        }
        const u64 a = parse_u64(std::string_view(args).substr(0, comma), text);
        const i64 b = parse_i64(std::string_view(args).substr(comma + 1), text);
        if (a == 0 && b <= 0) {
            throw std::invalid_argument("affine:0,b needs b >= 1");
        }
        return affine(a, b);
    }
    if (name == "anti-korselt") {
        return no_args(anti_korselt());
    }
    if (name == "phi-half") {
        return no_args(phi_half());
    }
    if (name == "lambda-half") {
        return no_args(lambda_half());
    }
    if (name == "frak-p") {
        return no_args(frak_p());
    }
    if (name == "upsilon") {
        return upsilon(one_arg());
    }
    if (name == "w") {
        return w(one_arg());
    }
    if (name == "h") {
        return h(one_arg());
    }
    throw std::invalid_argument("unknown set family '" + name + "'");
}

std::string SetDescriptor::str() const {
    switch (family) {
    case Family::Affine:
        return "affine:" + std::to_string(a) + "," + std::to_string(b);
    case Family::AntiKorselt:
        return "anti-korselt";
    case Family::PhiHalf:
        return "phi-half";
    case Family::LambdaHalf:
        return "lambda-half";
    case Family::FrakP:
        return "frak-p";
    case Family::Upsilon:
        return "upsilon:" + std::to_string(param);
    case Family::W:
        return "w:" + std::to_string(param);
    case Family::H:
        return "h:" + std::to_string(param);
    }
    return "?";
}

// ---------------------------------------------------------------- membership

Membership classify(const SetDescriptor& set, u64 n, const Factorization& nf) {
    if (n == 0) {
        throw std::invalid_argument("membership: n must be >= 1");
    }
    switch (set.family) {
    case Family::Affine: {
        const i128 k = static_cast<i128>(set.a) * static_cast<i128>(n) + set.b;
        if (k < 1) {
            return undefined();
        }
        return defined(divides_power_sum(nf, static_cast<u128>(k)));
    }
    case Family::AntiKorselt: {
        if (n == 1) {
            return undefined();  // exponent n - 1 = 0
        }
        for (const auto& pp : nf) {
            if ((n - 1) % (pp.prime - 1) == 0) {
                return defined(false);
            }
        }
        return defined(true);
    }
    case Family::PhiHalf: {
        const u64 phi = euler_phi(nf);
        if (phi % 2 != 0) {
            return undefined();
        }
        return defined(divides_power_sum(nf, phi / 2));
    }
    case Family::LambdaHalf: {
        const u64 lambda = carmichael_lambda(nf);
        if (lambda % 2 != 0) {
            return undefined();
        }
        return defined(divides_power_sum(nf, lambda / 2));
    }
    case Family::FrakP: {
        if (n % 2 == 0 || n == 1) {
            return undefined();
        }
        return defined(divides_power_sum(nf, (n - 1) / 2));
    }
    case Family::Upsilon: {
        if (n % 2 == 0 || n == 1) {
            return defined(false);
        }
        for (const auto& pp : nf) {
            if (two_adic_valuation(pp.prime - 1) != set.param) {
                return defined(false);
            }
        }
        return defined(true);
    }
    case Family::W:
        return defined(divides_power_sum(factorize(set.param), n));
    case Family::H:
        return defined(divides_power_sum(nf, set.param));
    }
    return undefined();
}

Membership classify(const SetDescriptor& set, u64 n) {
    if (n == 0) {
        throw std::invalid_argument("membership: n must be >= 1");
    }
    if (set.family == Family::W) {
        return classify(set, n, Factorization{});
    }
    return classify(set, n, factorize(n));
}

bool member(const SetDescriptor& set, u64 n) { return classify(set, n).member; }

// ---------------------------------------------------------------- complements

ProgressionUnion wn_complement(u64 n) {
    if (n == 0) {
        throw std::invalid_argument("wn_complement: n must be >= 1");
    }
    ProgressionUnion out;
    out.truncation_note = "exact";
    if (n % 4 == 0) {
        out.progressions.push_back({2, 2});
        out.points.push_back(1);
    } else if (n % 4 == 2) {
        out.progressions.push_back({1, 1});
    } else {
        for (const auto& pp : factorize(n)) {
            add_unique(out.progressions, {pp.prime - 1, pp.prime - 1});
        }
    }
    return out;
}

ProgressionUnion hk_complement(u64 k) {
    if (k == 0) {
        throw std::invalid_argument("hk_complement: k must be >= 1");
    }
    ProgressionUnion out;
    out.truncation_note = "exact";
    if (k == 1) {
        out.progressions.push_back({2, 2});
        return out;
    }
    if (k % 2 == 1) {
        out.progressions.push_back({2, 4});
        return out;
    }
    out.progressions.push_back({2, 2});
    // Odd primes p with (p - 1) | k: walk the divisors of k.
    std::vector<u64> divisors{1};
    for (const auto& [p, e] : factorize(k)) {
        const std::size_t base = divisors.size();
        u64 pe = 1;
        for (unsigned i = 0; i < e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < base; ++j) {
                divisors.push_back(divisors[j] * pe);
            }
        }
    }
    std::sort(divisors.begin(), divisors.end());
    for (u64 d : divisors) {
        if (d % 2 == 0 && d < std::numeric_limits<u64>::max() && is_prime(d + 1)) {
            out.progressions.push_back({d + 1, d + 1});
        }
    }
    return out;
}

bool in_affine_prime_set(u64 a, i64 b, u64 p) {
    if (p < 3 || !is_prime(p)) {
        return false;
    }
    const BigInt g = gcd(big(a) * big(p), big(p - 1));
    return mpz_divisible_p(big(b).get_mpz_t(), g.get_mpz_t()) != 0;
}

namespace {

// Least positive solution of x = 0 (mod a p), x = -b (mod p - 1), and the
// lcm modulus.
std::pair<BigInt, BigInt> xi_system(u64 a, i64 b, u64 p) {
    if (a == 0) {
        throw std::domain_error("xi: a must be >= 1");
    }
    require_odd_prime(p, "xi");
    const std::array<Congruence, 2> system{Congruence(0, big(a) * big(p)),
                                           Congruence(-big(b), big(p - 1))};
    const auto solved = crt_solve(system);
    if (!solved) {
        throw std::domain_error("xi: no solution, p = " + std::to_string(p) + " is not in the prime set of (a, b) = (" +
                                std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    BigInt x = solved->residue == 0 ? solved->modulus : solved->residue;
    return {x, solved->modulus};
}

} // namespace

u64 xi(u64 a, i64 b, u64 p) {
    const auto [x, modulus] = xi_system(a, b, p);
    return to_u64(x / big(a), "xi");
}

ArithmeticProgression affine_prime_progression(u64 a, i64 b, u64 p) {
    const auto [x, modulus] = xi_system(a, b, p);
    return {to_u64(x / big(a), "xi"), to_u64(modulus / big(a), "progression step")};
}

ProgressionUnion affine_complement(u64 a, i64 b, u64 prime_bound) {
    if (a == 0) {
        throw std::invalid_argument("affine_complement: a must be >= 1");
    }
    if (prime_bound < 3) {
        throw std::invalid_argument("affine_complement: prime bound must be >= 3");
    }
    const bool a_even = a % 2 == 0;
    const bool b_even = b % 2 == 0;
    ProgressionUnion out;
    if (b_even) {
        out.progressions.push_back({2, 2});
    } else {
        out.progressions.push_back({2, 4});
    }
    if (a_even == b_even) {
        for (u64 p : primes_in_range(3, prime_bound)) {
            if (in_affine_prime_set(a, b, p)) {
                add_unique(out.progressions, affine_prime_progression(a, b, p));
            }
        }
        out.tail_bound = Rational(big(a), big(prime_bound));
        out.truncation_note = "primes p <= " + std::to_string(prime_bound) + "; omitted p > " +
                              std::to_string(prime_bound) + " bounded by " + out.tail_bound.str();
    } else {
        out.truncation_note = "exact";
    }
    // Non-members the parity classes above miss: exponents a n + b <= 1.
    if (b <= 0) {
        const u64 edge = static_cast<u64>((static_cast<i128>(1) - b) / static_cast<i128>(a));
        constexpr u64 kMaxEdgePoints = 1'000'000;
        if (edge > kMaxEdgePoints) {
            throw CapExceeded("affine_complement: too many small-exponent edge points", kMaxEdgePoints);
        }
        for (u64 n = 1; n <= edge; ++n) {
            if (!member(SetDescriptor::affine(a, b), n) && !out.contains(n)) {
                out.points.push_back(n);
            }
        }
    }
    return out;
}

ArithmeticProgression g_progression(u64 p, i64 b) {
    require_odd_prime(p, "g_progression");
    if (b % 2 == 0) {
        throw std::domain_error("g_progression: b must be odd");
    }
    return ArithmeticProgression::residue_class(-big(b) * big(p), p * (p - 1));
}

ArithmeticProgression f_progression(u64 p) {
    require_odd_prime(p, "f_progression");
    return ArithmeticProgression::residue_class(big(p) * big(p), 2 * p * (p - 1));
}

bool in_R(const BigInt& m, const BigInt& phi_m, i64 b) {
    if (m <= 2) {
        return false;
    }
    const BigInt g = gcd(m, phi_m);
    return mpz_divisible_p(big(b).get_mpz_t(), g.get_mpz_t()) != 0;
}

bool in_R(u64 m, i64 b) {
    if (m <= 2) {
        return false;
    }
    return in_R(big(m), big(euler_phi(m)), b);
}

namespace {

void check_distinct_odd_primes(std::span<const u64> primes, const char* where) {
    if (primes.empty()) {
        throw std::invalid_argument(std::string(where) + ": empty prime set");
    }
    std::vector<u64> sorted(primes.begin(), primes.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument(std::string(where) + ": primes must be distinct");
    }
    for (u64 p : sorted) {
        require_odd_prime(p, where);
    }
}

} // namespace

std::optional<ArithmeticProgression> intersect_g(std::span<const u64> primes, i64 b) {
    check_distinct_odd_primes(primes, "intersect_g");
    BigInt m = 1;
    BigInt phi = 1;
    BigInt lambda = 1;
    for (u64 p : primes) {
        m *= big(p);
        phi *= big(p - 1);
        lambda = lcm(lambda, big(p - 1));
    }
    if (!in_R(m, phi, b)) {
        return std::nullopt;
    }
    const std::array<Congruence, 2> system{Congruence(0, m), Congruence(-big(b), lambda)};
    const auto solved = crt_solve(system);
    // gcd(m, lambda) = gcd(m, phi) for squarefree m, so the system is solvable.
    return ArithmeticProgression::residue_class(solved->residue, to_u64(solved->modulus, "intersection step"));
}

std::optional<ArithmeticProgression> intersect_f(std::span<const u64> primes) {
    check_distinct_odd_primes(primes, "intersect_f");
    std::vector<Congruence> system;
    for (u64 p : primes) {
        system.push_back(f_progression(p).congruence());
    }
    const auto solved = crt_solve(system);
    if (!solved) {
        return std::nullopt;
    }
    return ArithmeticProgression::residue_class(solved->residue, to_u64(solved->modulus, "intersection step"));
}

bool member_lambda_half_by_formula(u64 n) {
    if (n == 0) {
        throw std::invalid_argument("member_lambda_half_by_formula: n must be >= 1");
    }
    const Factorization f = factorize(n);
    const unsigned twos = f.exponent_of(2);
    std::vector<unsigned> valuations;
    for (const auto& pp : f) {
        if (pp.prime != 2) {
            valuations.push_back(two_adic_valuation(pp.prime - 1));
        }
    }
    if (valuations.empty()) {
        return classify(SetDescriptor::lambda_half(), n, f).member;
    }
    const bool all_equal = std::all_of(valuations.begin(), valuations.end(),
                                       [&](unsigned v) { return v == valuations.front(); });
    if (twos == 0) {
        return all_equal;
    }
    if (twos == 2 || twos == 3) {
        return all_equal && valuations.front() == 1 && (n >> twos) != 3;
    }
    return false;
}

// ---------------------------------------------------------------- scans

namespace {

// Calls on_member(block, n) for every member n <= limit; blocks are
// contiguous and ascending, and each block is visited by one thread.
template <class OnMember>
std::size_t scan(const SetDescriptor& set, u64 limit, const ScanOptions& opts, OnMember&& on_member) {
    if (limit > opts.cap) {
        throw CapExceeded("scan limit " + std::to_string(limit) + " exceeds cap", opts.cap);
    }
    if (limit == 0) {
        return 0;
    }
    if (set.family == Family::W) {
        const Factorization nf = factorize(set.param);
        return detail::parallel_blocks(1, limit, opts.threads, [&](std::size_t block, u64 lo, u64 hi) {
            for (u64 k = lo; k <= hi; ++k) {
                if (divides_power_sum(nf, k)) {
                    on_member(block, k);
                }
            }
        });
    }
    const auto sieve = shared_sieve(limit);
    return detail::parallel_blocks(1, limit, opts.threads, [&](std::size_t block, u64 lo, u64 hi) {
        for (u64 n = lo; n <= hi; ++n) {
            if (classify(set, n, sieve->factorize(n)).member) {
                on_member(block, n);
            }
        }
    });
}

} // namespace

std::vector<u64> enumerate(const SetDescriptor& set, u64 limit, const ScanOptions& opts) {
    std::vector<std::vector<u64>> blocks(std::max(1U, opts.threads));
    scan(set, limit, opts, [&](std::size_t block, u64 n) { blocks[block].push_back(n); });
    std::vector<u64> out;
    for (auto& b : blocks) {
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

u64 count_members(const SetDescriptor& set, u64 limit, const ScanOptions& opts) {
    std::vector<u64> counts(std::max(1U, opts.threads), 0);
    scan(set, limit, opts, [&](std::size_t block, u64) { ++counts[block]; });
    u64 total = 0;
    for (u64 c : counts) {
        total += c;
    }
    return total;
}

} // namespace powsum
