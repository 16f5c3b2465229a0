#pragma once

// Command-line front end over the library: parsing, validation, execution
// and report rendering, kept apart from main() so it can be tested.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "powsum/arith.hpp"

namespace powsum::cli {

enum class Format { Plain, Json, Csv };

/// Bad flags, missing parameters or unparsable values. Exit status 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Default caps, each overridable by an environment variable and then by a
/// flag.
struct Limits {
    u64 scan_cap = 10'000'000;        // POWSUM_SCAN_CAP, --scan-cap
    u64 naive_cap = 10'000'000;       // POWSUM_NAIVE_CAP, --naive-cap
    u64 cell_budget = 5'000'000;      // POWSUM_CELL_BUDGET, --cell-budget
    u64 supremum_cap = 26;            // POWSUM_SUPREMUM_CAP, --supremum-cap

    /// Throws UsageError when a variable is set but not a positive integer.
    static Limits from_environment();
};

struct CommandRequest {
    std::string subcommand;  // residue | member | enumerate | density | verify
    std::optional<u64> n;
    std::optional<u64> k;
    std::string set;
    std::optional<u64> limit;
    u64 prime_bound = 300;
    std::optional<u64> supremum;
    std::string suite;
    std::string method = "fast";  // residue: fast | naive | von-staudt
    Format format = Format::Plain;
    unsigned threads = 1;
    Limits limits;
};

/// Parses argv-style arguments (without the program name). Environment caps
/// are read first so flags can override them. Throws UsageError.
CommandRequest parse(const std::vector<std::string>& args);

struct Report {
    int status = 0;
    std::string output;  // rendered in the request's format
    std::string error;
};

/// Validates and executes. Status 0 on success, 1 when a verify check
/// fails, 2 on usage errors, 3 when a cap or budget is exceeded.
Report run(const CommandRequest& request);

/// Full program: parse, run, print. Returns the exit status.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace powsum::cli
