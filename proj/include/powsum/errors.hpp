#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace powsum {

/// A scan or oracle limit was exceeded. Carries the limit that was hit.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& what, std::uint64_t limit)
        : std::runtime_error(what + " (limit " + std::to_string(limit) + ")"), limit_(limit) {}

    std::uint64_t limit() const noexcept { return limit_; }

private:
    std::uint64_t limit_;
};

/// An exact computation would need more work than its budget allows.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t budget)
        : std::runtime_error(what + " (budget " + std::to_string(budget) + ")"), budget_(budget) {}

    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t budget_;
};

} // namespace powsum
