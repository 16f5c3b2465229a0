#pragma once

// Self-checks that compare the closed forms against direct computation.

#include <string>
#include <string_view>
#include <vector>

#include "powsum/arith.hpp"

namespace powsum {

struct Check {
    std::string name;
    bool passed = true;
    u64 cases = 0;
    std::vector<std::string> counterexamples;  // first few failures
};

struct VerifyBudget {
    u64 oracle_n = 1000;     // oracle grid n <= oracle_n
    u64 oracle_k = 40;       // oracle grid k <= oracle_k
    u64 scan_limit = 100'000;
    u64 prime_bound = 50;
    unsigned threads = 1;
};

inline constexpr std::size_t kMaxCounterexamples = 5;

/// Suites: "oracle", "sets", "density", "all". Throws std::invalid_argument
/// for any other name.
std::vector<Check> run_suite(std::string_view suite, const VerifyBudget& budget = {});

bool all_passed(const std::vector<Check>& checks);

} // namespace powsum
