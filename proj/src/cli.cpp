#include "powsum/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "powsum/density.hpp"
#include "powsum/errors.hpp"
#include "powsum/powersum.hpp"
#include "powsum/sets.hpp"
#include "powsum/verify.hpp"

namespace powsum::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kDecimalDigits = 15;

u64 env_cap(const char* name, u64 fallback) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') {
        return fallback;
    }
    const std::string_view text(raw);
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || v == 0) {
        throw UsageError(std::string(name) + " must be a positive integer, got '" + raw + "'");
    }
    return v;
}

struct Parsed {
    CLI::App app{"Power sums modulo n: residues, characterized sets and their densities", "powsum"};
    CommandRequest request;
    std::string format_text = "plain";
};

void build(Parsed& p) {
    auto& app = p.app;
    auto& r = p.request;
    app.require_subcommand(1);
    app.add_option("--format", p.format_text, "Output format")
        ->check(CLI::IsMember({"plain", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--threads", r.threads, "Worker threads for range scans")->check(CLI::Range(1U, 256U));
    app.add_option("--scan-cap", r.limits.scan_cap, "Largest allowed scan limit")->check(CLI::PositiveNumber);
    app.add_option("--naive-cap", r.limits.naive_cap, "Largest n for direct summation")->check(CLI::PositiveNumber);
    app.add_option("--cell-budget", r.limits.cell_budget, "Largest elimination table")->check(CLI::PositiveNumber);
    app.add_option("--supremum-cap", r.limits.supremum_cap, "Largest k for the supremum bound")
        ->check(CLI::PositiveNumber);

    auto* residue = app.add_subcommand("residue", "S_k(n) mod n")->fallthrough();
    residue->add_option("-n", r.n, "Modulus n >= 1")->required();
    residue->add_option("-k", r.k, "Exponent k >= 1")->required();
    residue->add_option("--method", r.method, "fast, naive or von-staudt")
        ->check(CLI::IsMember({"fast", "naive", "von-staudt"}))
        ->capture_default_str();

    auto* member = app.add_subcommand("member", "Membership of n in a set")->fallthrough();
    member->add_option("--set", r.set, "Set descriptor, e.g. affine:1,1")->required();
    member->add_option("-n", r.n, "Candidate n >= 1")->required();

    auto* enumerate = app.add_subcommand("enumerate", "All members up to a limit")->fallthrough();
    enumerate->add_option("--set", r.set, "Set descriptor")->required();
    enumerate->add_option("--limit", r.limit, "Inclusive upper limit")->required();

    auto* density = app.add_subcommand("density", "Exact, certified or empirical density")->fallthrough();
    auto* set_opt = density->add_option("--set", r.set, "Set descriptor");
    density->add_option("--prime-bound", r.prime_bound, "Largest prime kept in the progression family")
        ->check(CLI::Range(u64{3}, u64{1} << 32))
        ->capture_default_str();
    density->add_option("--limit", r.limit, "Count members up to this limit instead");
    auto* sup_opt = density->add_option("--supremum", r.supremum, "Supremum bound over the first k odd primes");
    set_opt->excludes(sup_opt);

    auto* verify = app.add_subcommand("verify", "Run a self-check suite")->fallthrough();
    verify->add_option("suite", r.suite, "oracle, sets, density or all")
        ->required()
        ->check(CLI::IsMember({"oracle", "sets", "density", "all"}));
    verify->add_option("--prime-bound", r.prime_bound, "Largest prime for the density checks")
        ->check(CLI::Range(u64{3}, u64{1} << 20));
    verify->add_option("--limit", r.limit, "Scan limit for the set checks");
}

void finish(Parsed& p) {
    auto& r = p.request;
    r.subcommand = p.app.get_subcommands().front()->get_name();
    r.format = p.format_text == "json" ? Format::Json : p.format_text == "csv" ? Format::Csv : Format::Plain;
    if (r.subcommand == "verify" && !p.app.get_subcommand("verify")->count("--prime-bound")) {
        r.prime_bound = 50;
    }
    if (r.subcommand == "density" && r.set.empty() && !r.supremum) {
        throw UsageError("density: one of --set or --supremum is required");
    }
    if (r.n && *r.n == 0) {
        throw UsageError("n must be >= 1");
    }
    if (r.k && *r.k == 0) {
        throw UsageError("k must be >= 1");
    }
    if (r.limit && *r.limit == 0) {
        throw UsageError("--limit must be >= 1");
    }
    if (r.supremum && *r.supremum == 0) {
        throw UsageError("--supremum must be >= 1");
    }
    if (!r.set.empty()) {
        try {
            (void)SetDescriptor::parse(r.set);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
}

Limits defaults_from_environment() { return Limits::from_environment(); }

// ------------------------------------------------------------- rendering

std::string scalar_text(const json& v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

std::string render_flat(const json& report, Format format) {
    std::ostringstream os;
    if (format == Format::Json) {
        os << report.dump() << '\n';
    } else if (format == Format::Csv) {
        bool first = true;
        for (const auto& [key, value] : report.items()) {
            os << (first ? "" : ",") << csv_cell(key);
            first = false;
        }
        os << '\n';
        first = true;
        for (const auto& [key, value] : report.items()) {
            os << (first ? "" : ",") << csv_cell(scalar_text(value));
            first = false;
        }
        os << '\n';
    } else {
        for (const auto& [key, value] : report.items()) {
            os << key << ": " << scalar_text(value) << '\n';
        }
    }
    return os.str();
}

json fraction_fields(json report, const std::string& name, const Rational& value, Rational::Rounding mode) {
    report[name] = value.str();
    report[name + "_decimal"] = value.to_decimal(kDecimalDigits, mode);
    return report;
}

// --------------------------------------------------------------- commands

Report residue(const CommandRequest& r) {
    const PowerSumQuery q(*r.n, *r.k);
    u64 value = 0;
    if (r.method == "naive") {
        value = power_sum_mod_naive(q, r.limits.naive_cap);
    } else if (r.method == "von-staudt") {
        value = carlitz_von_staudt_residue(q);
    } else {
        value = power_sum_mod_fast(q);
    }
    json report;
    report["n"] = *r.n;
    report["k"] = *r.k;
    report["residue"] = value;
    report["method"] = r.method;
    return {0, render_flat(report, r.format), {}};
}

Report membership(const CommandRequest& r) {
    const auto set = SetDescriptor::parse(r.set);
    const auto m = classify(set, *r.n);
    json report;
    report["set"] = set.str();
    report["n"] = *r.n;
    report["member"] = m.member;
    report["out_of_domain"] = m.out_of_domain;
    return {0, render_flat(report, r.format), {}};
}

Report enumeration(const CommandRequest& r) {
    const auto set = SetDescriptor::parse(r.set);
    const auto members = enumerate(set, *r.limit, {.cap = r.limits.scan_cap, .threads = r.threads});
    std::ostringstream os;
    if (r.format == Format::Json) {
        json report;
        report["set"] = set.str();
        report["limit"] = *r.limit;
        report["count"] = members.size();
        report["members"] = members;
        os << report.dump() << '\n';
    } else {
        if (r.format == Format::Csv) {
            os << "n\n";
        }
        for (u64 m : members) {
            os << m << '\n';
        }
    }
    return {0, os.str(), {}};
}

json enclosure_report(json report, const DensityEnclosure& e) {
    report["method"] = e.lower == e.upper && e.tail_bound == 0 ? "exact" : "enclosure";
    report = fraction_fields(std::move(report), "lower", e.lower, Rational::Rounding::Floor);
    report = fraction_fields(std::move(report), "upper", e.upper, Rational::Rounding::Ceil);
    report["tail_bound"] = e.tail_bound.str();
    report["truncation"] = e.truncation;
    return report;
}

Report density(const CommandRequest& r) {
    json report;
    if (r.supremum) {
        const Rational value = supremum_upper_bound(*r.supremum, r.limits.supremum_cap);
        report["supremum"] = *r.supremum;
        report["method"] = "supremum";
        report = fraction_fields(std::move(report), "value", value, Rational::Rounding::Ceil);
        report["truncation"] = "first " + std::to_string(*r.supremum) +
                               " odd primes; non-increasing in k, so this bounds the supremum from above";
        return {0, render_flat(report, r.format), {}};
    }
    const auto set = SetDescriptor::parse(r.set);
    report["set"] = set.str();
    const DensityOptions opts{r.limits.cell_budget};
    if (r.limit) {
        const ScanOptions scan{.cap = r.limits.scan_cap, .threads = r.threads};
        const u64 count = count_members(set, *r.limit, scan);
        const Rational value(BigInt(static_cast<unsigned long>(count)), BigInt(static_cast<unsigned long>(*r.limit)));
        report["limit"] = *r.limit;
        report["method"] = "empirical";
        report["count"] = count;
        report = fraction_fields(std::move(report), "density", value, Rational::Rounding::Nearest);
        return {0, render_flat(report, r.format), {}};
    }
    switch (set.family) {
    case Family::Affine:
        report["prime_bound"] = r.prime_bound;
        report = enclosure_report(std::move(report), affine_density_enclosure(set.a, set.b, r.prime_bound, opts));
        break;
    case Family::AntiKorselt:
        report["prime_bound"] = r.prime_bound;
        report = enclosure_report(std::move(report), anti_korselt_enclosure(r.prime_bound, opts));
        break;
    case Family::H:
    case Family::W: {
        const auto complement = set.family == Family::H ? hk_complement(set.param) : wn_complement(set.param);
        DensityEnclosure e;
        e.upper = Rational(1) - union_density(complement.progressions, opts.cell_budget);
        e.lower = e.upper;
        e.truncation = "exact";
        report = enclosure_report(std::move(report), e);
        break;
    }
    default:
        throw UsageError("density: no closed form for '" + set.str() + "'; pass --limit for an empirical density");
    }
    return {0, render_flat(report, r.format), {}};
}

Report verification(const CommandRequest& r) {
    VerifyBudget budget;
    budget.prime_bound = r.prime_bound;
    budget.threads = r.threads;
    if (r.limit) {
        budget.scan_limit = *r.limit;
    }
    if (budget.scan_limit > r.limits.scan_cap) {
        throw CapExceeded("verify: scan limit exceeds cap", r.limits.scan_cap);
    }
    const auto checks = run_suite(r.suite, budget);
    const bool ok = all_passed(checks);
    std::ostringstream os;
    if (r.format == Format::Json) {
        json report;
        report["suite"] = r.suite;
        report["prime_bound"] = r.prime_bound;
        report["limit"] = budget.scan_limit;
        report["passed"] = ok;
        json list = json::array();
        for (const auto& c : checks) {
            list.push_back({{"name", c.name},
                            {"passed", c.passed},
                            {"cases", c.cases},
                            {"counterexamples", c.counterexamples}});
        }
        report["checks"] = std::move(list);
        os << report.dump() << '\n';
    } else if (r.format == Format::Csv) {
        os << "name,passed,cases,counterexamples\n";
        for (const auto& c : checks) {
            std::string joined;
            for (const auto& x : c.counterexamples) {
                joined += (joined.empty() ? "" : "; ") + x;
            }
            os << csv_cell(c.name) << ',' << (c.passed ? "true" : "false") << ',' << c.cases << ','
               << csv_cell(joined) << '\n';
        }
    } else {
        for (const auto& c : checks) {
            os << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.cases << " cases)\n";
            for (const auto& x : c.counterexamples) {
                os << "    counterexample: " << x << '\n';
            }
        }
        os << (ok ? "all checks passed\n" : "some checks failed\n");
    }
    return {ok ? 0 : 1, os.str(), {}};
}

} // namespace

Limits Limits::from_environment() {
    Limits l;
    l.scan_cap = env_cap("POWSUM_SCAN_CAP", l.scan_cap);
    l.naive_cap = env_cap("POWSUM_NAIVE_CAP", l.naive_cap);
    l.cell_budget = env_cap("POWSUM_CELL_BUDGET", l.cell_budget);
    l.supremum_cap = env_cap("POWSUM_SUPREMUM_CAP", l.supremum_cap);
    return l;
}

CommandRequest parse(const std::vector<std::string>& args) {
    Parsed p;
    p.request.limits = defaults_from_environment();
    build(p);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        p.app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    finish(p);
    return p.request;
}

Report run(const CommandRequest& request) {
    try {
        if (request.subcommand == "residue") {
            return residue(request);
        }
        if (request.subcommand == "member") {
            return membership(request);
        }
        if (request.subcommand == "enumerate") {
            return enumeration(request);
        }
        if (request.subcommand == "density") {
            return density(request);
        }
        if (request.subcommand == "verify") {
            return verification(request);
        }
        throw UsageError("unknown subcommand '" + request.subcommand + "'");
    } catch (const CapExceeded& e) {
        return {3, {}, e.what()};
    } catch (const BudgetExceeded& e) {
        return {3, {}, e.what()};
    } catch (const std::invalid_argument& e) {
        return {2, {}, e.what()};
    } catch (const std::domain_error& e) {
        return {2, {}, e.what()};
    } catch (const std::overflow_error& e) {
        return {2, {}, e.what()};
    }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    Parsed p;
    try {
        p.request.limits = defaults_from_environment();
        build(p);
        p.app.parse(argc, argv);
        finish(p);
    } catch (const CLI::ParseError& e) {
        const int code = p.app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    const Report report = run(p.request);
    out << report.output;
    if (!report.error.empty()) {
        err << "error: " << report.error << '\n';
    }
    return report.status;
}

} // namespace powsum::cli
