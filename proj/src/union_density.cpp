// Density of a union of residue classes by variable elimination.
//
// By CRT a uniformly random residue n (mod lcm of all steps) is a tuple of
// independent coordinates n mod r^E, one per prime r, where E is the largest
// power of r in any step. Each class "n = x (mod d)" is a conjunction of
// one test per prime power of d, so the complement's indicator is a product
// of per-class factors (1 - [n in class]) over a few coordinates. Each
// coordinate only needs to be known up to the atoms of its tests, and the
// expectation of the product is computed by summing coordinates out one at a
// time. Weights are kept as integers over the fixed denominator
// prod r^E, so the arithmetic is exact without any gcd work.

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "powsum/density.hpp"
#include "powsum/errors.hpp"

namespace powsum {

namespace {

struct Test {
    std::size_t event;
    unsigned depth;  // class is residue (mod r^depth)
    u64 residue;
};

struct Atom {
    BigInt weight;                 // probability * r^E
    std::vector<std::size_t> in;   // events whose test holds on this atom
};

struct Coordinate {
    u64 prime = 0;
    unsigned depth = 0;  // E
    std::vector<Test> tests;
    std::vector<Atom> atoms;
};

struct Factor {
    std::vector<std::size_t> scope;  // coordinate indices, ascending
    std::vector<BigInt> table;       // mixed radix over scope atom counts, first index fastest
};

u64 ipow(u64 r, unsigned e) {
    u64 v = 1;
    for (unsigned i = 0; i < e; ++i) {
        v *= r;
    }
    return v;
}

// Partitions Z/r^E into the atoms of the coordinate's tests. The relevant
// nodes of the r-adic tree are the prefixes (j, x mod r^j) of every test;
// an atom is a relevant node minus its relevant children.
void build_atoms(Coordinate& c) {
    const u64 r = c.prime;
    std::map<std::pair<unsigned, u64>, bool> nodes;
    for (const auto& t : c.tests) {
        for (unsigned j = 0; j <= t.depth; ++j) {
            nodes[{j, t.residue % ipow(r, j)}] = true;
        }
    }
    std::map<std::vector<std::size_t>, BigInt> by_signature;
    for (const auto& [node, unused] : nodes) {
        const auto [j, y] = node;
        const u64 rj = ipow(r, j);
        u64 children = 0;
        if (j < c.depth) {
            auto it = nodes.lower_bound({j + 1, 0});
            for (; it != nodes.end() && it->first.first == j + 1; ++it) {
                if (it->first.second % rj == y) {
                    ++children;
                }
            }
        }
        // weight * r^E = r^(E - j) - children * r^(E - j - 1)
        const u64 own = ipow(r, c.depth - j);
        const u64 taken = children == 0 ? 0 : children * ipow(r, c.depth - j - 1);
        if (own == taken) {
            continue;
        }
        std::vector<std::size_t> in;
        for (const auto& t : c.tests) {
            if (j >= t.depth && y % ipow(r, t.depth) == t.residue) {
                in.push_back(t.event);
            }
        }
        std::sort(in.begin(), in.end());
        by_signature[in] += BigInt(static_cast<unsigned long>(own - taken));
    }
    for (auto& [sig, w] : by_signature) {
        c.atoms.push_back({w, sig});
    }
}

struct Scope {
    std::vector<std::size_t> coords;
    std::vector<std::size_t> radix;
    u64 cells = 1;
};

Scope make_scope(std::vector<std::size_t> coords, const std::vector<Coordinate>& cs, u64 budget) {
    Scope s;
    s.coords = std::move(coords);
    for (std::size_t c : s.coords) {
        const std::size_t n = cs[c].atoms.size();
        s.radix.push_back(n);
        if (s.cells > budget / n) {
            throw BudgetExceeded("union_density: elimination table too large", budget);
        }
        s.cells *= n;
    }
    return s;
}

} // namespace

Rational union_density(std::span<const ArithmeticProgression> aps, u64 cell_budget) {
    if (aps.empty()) {
        return Rational(0);
    }
    std::map<u64, Coordinate> by_prime;
    std::vector<std::vector<u64>> event_primes(aps.size());
    for (std::size_t i = 0; i < aps.size(); ++i) {
        const u64 step = aps[i].step;
        if (step == 0) {
            throw std::domain_error("union_density: zero step");
        }
        if (step == 1) {
            return Rational(1);
        }
        for (const auto& [r, e] : factorize(step)) {
            auto& c = by_prime[r];
            c.prime = r;
            c.depth = std::max(c.depth, e);
            c.tests.push_back({i, e, aps[i].first % ipow(r, e)});
            event_primes[i].push_back(r);
        }
    }
    std::vector<Coordinate> coords;
    std::map<u64, std::size_t> index_of;
    for (auto& [r, c] : by_prime) {
        index_of[r] = coords.size();
        coords.push_back(std::move(c));
    }
    BigInt denominator = 1;
    for (auto& c : coords) {
        build_atoms(c);
        denominator *= BigInt(static_cast<unsigned long>(ipow(c.prime, c.depth)));
    }

    // One factor 1 - [n in class i] per event.
    std::vector<Factor> factors;
    for (std::size_t i = 0; i < aps.size(); ++i) {
        std::vector<std::size_t> scope_coords;
        for (u64 r : event_primes[i]) {
            scope_coords.push_back(index_of[r]);
        }
        std::sort(scope_coords.begin(), scope_coords.end());
        const Scope s = make_scope(scope_coords, coords, cell_budget);
        Factor f{s.coords, std::vector<BigInt>(s.cells)};
        std::vector<std::size_t> digit(s.coords.size(), 0);
        for (u64 cell = 0; cell < s.cells; ++cell) {
            bool inside = true;
            for (std::size_t d = 0; d < digit.size() && inside; ++d) {
                const auto& in = coords[s.coords[d]].atoms[digit[d]].in;
                inside = std::binary_search(in.begin(), in.end(), i);
            }
            f.table[cell] = inside ? 0 : 1;
            for (std::size_t d = 0; d < digit.size(); ++d) {
                if (++digit[d] < s.radix[d]) {
                    break;
                }
                digit[d] = 0;
            }
        }
        factors.push_back(std::move(f));
    }

    std::vector<bool> eliminated(coords.size(), false);
    BigInt constant = 1;

    for (std::size_t round = 0; round < coords.size(); ++round) {
        // Pick the coordinate whose elimination builds the smallest table;
        // ties go to the larger prime.
        std::size_t best = coords.size();
        u64 best_cells = 0;
        std::vector<std::size_t> best_scope;
        for (std::size_t c = coords.size(); c-- > 0;) {
            if (eliminated[c]) {
                continue;
            }
            std::vector<std::size_t> merged;
            for (const auto& f : factors) {
                if (std::binary_search(f.scope.begin(), f.scope.end(), c)) {
                    merged.insert(merged.end(), f.scope.begin(), f.scope.end());
                }
            }
            std::sort(merged.begin(), merged.end());
            merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
            merged.erase(std::remove(merged.begin(), merged.end(), c), merged.end());
            u64 cells = 1;
            for (std::size_t m : merged) {
                cells = std::min<u64>(cells * coords[m].atoms.size(), ~u64{0} / 64);
            }
            if (best == coords.size() || cells < best_cells) {
                best = c;
                best_cells = cells;
                best_scope = std::move(merged);
            }
        }
        const std::size_t var = best;
        eliminated[var] = true;

        std::vector<Factor> involved;
        std::vector<Factor> rest;
        for (auto& f : factors) {
            if (std::binary_search(f.scope.begin(), f.scope.end(), var)) {
                involved.push_back(std::move(f));
            } else {
                rest.push_back(std::move(f));
            }
        }
        const auto& atoms = coords[var].atoms;
        if (involved.empty()) {
            BigInt total = 0;
            for (const auto& a : atoms) {
                total += a.weight;
            }
            constant *= total;
            factors = std::move(rest);
            continue;
        }
        const Scope out = make_scope(best_scope, coords, cell_budget / std::max<std::size_t>(1, atoms.size()));

        // For each involved factor: stride of every output digit and of var.
        struct Access {
            std::vector<u64> out_stride;
            u64 var_stride = 0;
        };
        std::vector<Access> access;
        for (const auto& f : involved) {
            Access acc;
            acc.out_stride.assign(out.coords.size(), 0);
            u64 stride = 1;
            for (std::size_t c : f.scope) {
                if (c == var) {
                    acc.var_stride = stride;
                } else {
                    const auto pos = static_cast<std::size_t>(
                        std::lower_bound(out.coords.begin(), out.coords.end(), c) - out.coords.begin());
                    acc.out_stride[pos] = stride;
                }
                stride *= coords[c].atoms.size();
            }
            access.push_back(std::move(acc));
        }

        Factor result{out.coords, std::vector<BigInt>(out.cells)};
        std::vector<std::size_t> digit(out.coords.size(), 0);
        std::vector<u64> base(involved.size(), 0);
        BigInt term;
        for (u64 cell = 0; cell < out.cells; ++cell) {
            BigInt& acc = result.table[cell];
            for (std::size_t a = 0; a < atoms.size(); ++a) {
                term = atoms[a].weight;
                for (std::size_t f = 0; f < involved.size(); ++f) {
                    const BigInt& v = involved[f].table[base[f] + a * access[f].var_stride];
                    if (v == 0) {
                        term = 0;
                        break;
                    }
                    term *= v;
                }
                acc += term;
            }
            for (std::size_t d = 0; d < digit.size(); ++d) {
                for (std::size_t f = 0; f < involved.size(); ++f) {
                    base[f] += access[f].out_stride[d];
                }
                if (++digit[d] < out.radix[d]) {
                    break;
                }
                for (std::size_t f = 0; f < involved.size(); ++f) {
                    base[f] -= access[f].out_stride[d] * out.radix[d];
                }
                digit[d] = 0;
            }
        }
        rest.push_back(std::move(result));
        factors = std::move(rest);
    }

    for (const auto& f : factors) {
        constant *= f.table.at(0);
    }
    // constant / denominator is the density of the complement.
    return Rational(1) - Rational(constant, denominator);
}

} // namespace powsum
