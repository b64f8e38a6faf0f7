#pragma once

// Command-line front end. `run` parses argv into a RunConfig and hands it to
// `dispatch`, which writes one report to `out` and diagnostics to `err`.
//
// Exit status: 0 success, 1 a verification failed, 2 usage or input error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "primeshift/admissible.hpp"
#include "primeshift/bounds.hpp"
#include "primeshift/error.hpp"
#include "primeshift/input.hpp"
#include "primeshift/primes.hpp"
#include "primeshift/prune.hpp"
#include "primeshift/report_json.hpp"
#include "primeshift/representation.hpp"

namespace primeshift::cli {

enum class Format { json, text, csv };

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsageError = 2 };

struct RunConfig {
    std::string subcommand;
    std::optional<std::string> input_path;
    std::optional<std::string> output_path;
    Format format = Format::json;
    unsigned threads = 1;

    std::uint64_t limit = 1'000'000;
    std::optional<std::uint64_t> nth;
    std::int64_t from = 0;
    std::int64_t to = 0;
    std::size_t top = 10;
    unsigned k_min = 1;
    bool with_counts = false;
    std::uint64_t mertens_limit = 1'000'000;
    std::optional<std::uint64_t> ell;
    std::optional<double> x;
    std::string kind = "powers_of_two";
    std::uint64_t count = 10;
    std::uint64_t ratio = 2;
};

inline const char* kPrimesThreadsEnv = "PRIMESHIFT_THREADS";

/// --threads, overridden by PRIMESHIFT_THREADS when that is set to a positive integer.
inline unsigned resolve_threads(std::optional<unsigned> flag) {
    if (const char* env = std::getenv(kPrimesThreadsEnv)) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    if (flag && *flag > 0) return *flag;
    return std::max(1U, std::thread::hardware_concurrency());
}

namespace detail {

using nlohmann::json;

inline IntegerSet load_set(const RunConfig& cfg) {
    if (!cfg.input_path) throw ValidationError(cfg.subcommand + ": an input file is required (--input)");
    return parse_input_set(*cfg.input_path);
}

inline SequenceKind parse_kind(const std::string& s) {
    if (s == "powers_of_two") return SequenceKind::powers_of_two;
    if (s == "divisor_chain") return SequenceKind::divisor_chain;
    if (s == "two_pow_prime") return SequenceKind::two_pow_prime;
    throw ValidationError("unknown sequence kind '" + s + "'");
}

inline void require_format(const RunConfig& cfg, bool csv_ok) {
    if (cfg.format == Format::csv && !csv_ok)
        throw ValidationError(cfg.subcommand + ": csv output is not available");
}

struct Outcome {
    json report;
    bool passed = true;
    std::string text;  // human-oriented rendering
    std::string csv;
};

inline Outcome do_check(const RunConfig& cfg) {
    require_format(cfg, false);
    const IntegerSet set = load_set(cfg);
    const auto cert = check_admissible(set);
    Outcome o;
    o.report = report::envelope("check", report::set_summary(set, *cfg.input_path), report::to_json(cert));
    std::ostringstream t;
    t << to_string(cert.verdict) << " (" << set.size() << " elements)\n";
    if (cert.covering_prime) t << "every residue mod " << *cert.covering_prime << " is hit\n";
    for (const auto& w : cert.missed) t << "  mod " << w.prime << ": misses " << w.residue << '\n';
    o.text = t.str();
    return o;
}

inline Outcome do_prune(const RunConfig& cfg) {
    require_format(cfg, false);
    const IntegerSet set = load_set(cfg);
    const auto trace = greedy_prune(set);
    Outcome o;
    auto result = report::to_json(trace);
    result["admissible"] = check_admissible(trace.final_set).admissible();
    result["product_bound_holds"] = product_lower_bound_holds(trace);
    o.passed = result["admissible"].get<bool>() && result["product_bound_holds"].get<bool>();
    o.report = report::envelope("prune", report::set_summary(set, *cfg.input_path), std::move(result));
    std::ostringstream t;
    t << "l = " << trace.input_size << ", s = " << trace.s() << ", l_s = " << trace.final_set.size()
      << ", stop prime = " << trace.stop_prime << '\n';
    for (const auto& st : trace.steps)
        t << "  t=" << st.index << " p=" << st.prime << " drop r=" << st.removed_residue << " ("
          << st.removed_count << ") -> " << st.survivors_actual << " [proxy " << st.survivors_proxy
          << "]\n";
    o.text = t.str();
    return o;
}

inline Outcome do_guarantee(const RunConfig& cfg) {
    require_format(cfg, false);
    const IntegerSet set = load_set(cfg);
    const auto rep = guarantee(set);
    Outcome o;
    o.passed = rep.satisfied;
    o.report = report::envelope("guarantee", report::set_summary(set, *cfg.input_path), report::to_json(rep));
    std::ostringstream t;
    t << std::setprecision(6) << "l = " << rep.ell << ", l_s = " << rep.ell_s << ", s = " << rep.s
      << ", p_s = " << rep.p_s << '\n'
      << "m = " << rep.m << " (maynard_m = " << rep.maynard << "), bound = " << rep.theorem_bound
      << ", " << (rep.satisfied ? "satisfied" : "NOT satisfied") << '\n';
    o.text = t.str();
    return o;
}

inline Outcome do_bound(const RunConfig& cfg) {
    require_format(cfg, false);
    if (!cfg.ell && !cfg.x) throw ValidationError("bound: pass --ell and/or --x");
    json summary = json::object();
    json result = json::object();
    std::ostringstream t;
    t << std::setprecision(12);
    if (cfg.ell) {
        summary["ell"] = report::integer(*cfg.ell);
        const double v = theorem1_bound(*cfg.ell);
        result["theorem1_bound"] = v;
        t << "(1/8) ln " << *cfg.ell << " - 1.6 = " << v << '\n';
    }
    if (cfg.x) {
        summary["x"] = *cfg.x;
        const double v = corollary_bound(*cfg.x);
        result["corollary_bound"] = v;
        t << "(1/8) ln ln " << *cfg.x << " - 1.6 = " << v << '\n';
    }
    Outcome o;
    o.report = report::envelope("bound", std::move(summary), std::move(result));
    o.text = t.str();
    return o;
}

inline Outcome do_verify_lemmas(const RunConfig& cfg) {
    require_format(cfg, false);
    const auto mertens = verify_mertens(cfg.mertens_limit);
    const auto constants = verify_proof_constants();
    Outcome o;
    o.passed = mertens.passed;
    json consts = json::array();
    std::ostringstream t;
    t << std::setprecision(6);
    t << (mertens.passed ? "PASS " : "FAIL ") << mertens.name << " margin " << mertens.margin << '\n';
    for (const auto& c : constants) {
        o.passed = o.passed && c.passed;
        consts.push_back(report::to_json(c));
        t << (c.passed ? "PASS " : "FAIL ") << c.name << " margin " << c.margin << '\n';
    }
    o.report = report::envelope("verify-lemmas", {{"mertens_limit", report::integer(cfg.mertens_limit)}},
                              {{"mertens", report::to_json(mertens)},
                               {"proof_constants", std::move(consts)},
                               {"all_passed", o.passed}});
    o.text = t.str();
    return o;
}

inline Outcome do_repsearch(const RunConfig& cfg) {
    require_format(cfg, true);
    const IntegerSet set = load_set(cfg);
    SearchOptions opts;
    opts.threads = cfg.threads;
    if (!cfg.with_counts && cfg.format != Format::csv) opts.storage = CountStorage::none;
    const auto prof = rep_search(set, cfg.from, cfg.to, cfg.top, opts);
    Outcome o;
    json summary = report::set_summary(set, *cfg.input_path);
    summary["top"] = report::integer(static_cast<std::uint64_t>(cfg.top));
    o.report = report::envelope("repsearch", std::move(summary), report::to_json(prof, cfg.with_counts));
    std::ostringstream t;
    t << "range [" << prof.n_lo << ", " << prof.n_hi << "], max f_A(n) = " << prof.max_count()
      << ", total = " << prof.total << '\n';
    for (const auto& r : prof.records) t << "  n = " << r.n << "  f = " << r.count << '\n';
    o.text = t.str();
    if (cfg.format == Format::csv) {
        std::ostringstream c;
        report::write_csv(c, prof);
        o.csv = c.str();
    }
    return o;
}

inline Outcome do_romanoff(const RunConfig& cfg) {
    require_format(cfg, false);
    const auto r = romanoff_count(cfg.limit, cfg.k_min, cfg.threads);
    Outcome o;
    o.report = report::envelope("romanoff",
                              {{"limit", report::integer(cfg.limit)}, {"k_min", cfg.k_min}},
                              report::to_json(r));
    std::ostringstream t;
    t << std::setprecision(10) << r.representable << " / " << r.odd_total
      << " odd n in [3, " << r.limit << "] are p + 2^k (k >= " << r.k_min
      << "): density " << r.density() << '\n';
    o.text = t.str();
    return o;
}

inline Outcome do_gen(const RunConfig& cfg) {
    require_format(cfg, true);
    const auto kind = parse_kind(cfg.kind);
    const IntegerSet seq = gen_sequence(kind, cfg.count, cfg.ratio);
    Outcome o;
    o.report = report::envelope("gen",
                              {{"kind", cfg.kind},
                               {"count", report::integer(cfg.count)},
                               {"ratio", report::integer(cfg.ratio)}},
                              {{"size", report::integer(static_cast<std::uint64_t>(seq.size()))},
                               {"sequence", report::integers(seq)}});
    std::ostringstream t;
    t << "# " << cfg.kind << " count=" << cfg.count;
    if (kind == SequenceKind::divisor_chain) t << " ratio=" << cfg.ratio;
    t << '\n';
    for (std::int64_t v : seq) t << v << '\n';
    o.text = t.str();
    std::ostringstream c;
    c << "a\n";
    for (std::int64_t v : seq) c << v << '\n';
    o.csv = c.str();
    return o;
}

inline Outcome do_primes(const RunConfig& cfg) {
    require_format(cfg, false);
    SieveOptions sopts;
    sopts.threads = cfg.threads;
    const PrimeTable table = sieve(cfg.limit, sopts);
    json result = {{"limit", report::integer(table.limit())},
                   {"count", report::integer(static_cast<std::uint64_t>(table.count()))},
                   {"first", report::integer(table.primes().front())},
                   {"last", report::integer(table.primes().back())}};
    json summary = {{"limit", report::integer(cfg.limit)}};
    std::ostringstream t;
    t << "pi(" << table.limit() << ") = " << table.count() << ", largest prime " << table.primes().back()
      << '\n';
    if (cfg.nth) {
        const std::uint64_t p = nth_prime(*cfg.nth);
        summary["nth"] = report::integer(*cfg.nth);
        result["nth_prime"] = report::integer(p);
        t << "p_" << *cfg.nth << " = " << p << '\n';
    }
    Outcome o;
    o.report = report::envelope("primes", std::move(summary), std::move(result));
    o.text = t.str();
    return o;
}

}  // namespace detail

inline const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names = {"check",         "prune",     "guarantee",
                                                   "bound",         "verify-lemmas", "repsearch",
                                                   "romanoff",      "gen",       "primes"};
    return names;
}

/// Runs one subcommand. Library exceptions become exit status 2.
inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    detail::Outcome o;
    try {
        if (cfg.subcommand == "check") o = detail::do_check(cfg);
        else if (cfg.subcommand == "prune") o = detail::do_prune(cfg);
        else if (cfg.subcommand == "guarantee") o = detail::do_guarantee(cfg);
        else if (cfg.subcommand == "bound") o = detail::do_bound(cfg);
        else if (cfg.subcommand == "verify-lemmas") o = detail::do_verify_lemmas(cfg);
        else if (cfg.subcommand == "repsearch") o = detail::do_repsearch(cfg);
        else if (cfg.subcommand == "romanoff") o = detail::do_romanoff(cfg);
        else if (cfg.subcommand == "gen") o = detail::do_gen(cfg);
        else if (cfg.subcommand == "primes") o = detail::do_primes(cfg);
        else throw ValidationError("unknown subcommand '" + cfg.subcommand + "'");
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    std::string payload;
    switch (cfg.format) {
        case Format::json: payload = o.report.dump(2) + "\n"; break;
        case Format::text: payload = o.text; break;
        case Format::csv: payload = o.csv; break;
    }
    if (cfg.output_path) {
        std::ofstream f(*cfg.output_path, std::ios::binary);
        if (!f) {
            err << "error: cannot write '" << *cfg.output_path << "'\n";
            return kUsageError;
        }
        f << payload;
    } else {
        out << payload;
    }
    if (!o.passed) err << cfg.subcommand << ": verification failed\n";
    return o.passed ? kOk : kVerificationFailed;
}

/// Full command line: parse, then dispatch.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"primeshift: admissible pruning, representation counts and bound verifiers"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "primeshift 1.0.0");

    RunConfig cfg;
    std::optional<unsigned> threads_flag;
    std::string format = "json";
    const std::map<std::string, Format> formats = {
        {"json", Format::json}, {"text", Format::text}, {"csv", Format::csv}};

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json | text | csv")
            ->check(CLI::IsMember({"json", "text", "csv"}));
        sub->add_option("--threads", threads_flag, "worker threads (PRIMESHIFT_THREADS overrides)")
            ->check(CLI::PositiveNumber);
        sub->add_option("-o,--output", cfg.output_path, "write the report to a file");
    };
    auto with_input = [&](CLI::App* sub) {
        sub->add_option("input,-i,--input", cfg.input_path, "integer file, one per line ('-' = stdin)");
    };

    auto* check = app.add_subcommand("check", "admissibility certificate for an integer set");
    with_input(check);
    common(check);

    auto* prune = app.add_subcommand("prune", "greedy residue-class pruning trace");
    with_input(prune);
    common(prune);

    auto* guar = app.add_subcommand("guarantee", "prune and compare m with (1/8) ln l - 1.6");
    with_input(guar);
    common(guar);

    auto* bound = app.add_subcommand("bound", "evaluate (1/8) ln l - 1.6 and/or (1/8) ln ln x - 1.6");
    bound->add_option("--ell", cfg.ell, "set size l")->check(CLI::PositiveNumber);
    bound->add_option("--x", cfg.x, "corollary parameter x >= e");
    common(bound);

    auto* lemmas = app.add_subcommand("verify-lemmas", "Mertens-type product and proof constants");
    lemmas->add_option("--mertens-limit", cfg.mertens_limit, "check x in [74, limit]");
    common(lemmas);

    auto* rep = app.add_subcommand("repsearch", "exact f_A(n) over a range with top records");
    with_input(rep);
    rep->add_option("--from", cfg.from, "first n")->required();
    rep->add_option("--to", cfg.to, "last n")->required();
    rep->add_option("--top", cfg.top, "number of records")->check(CLI::PositiveNumber);
    rep->add_flag("--counts", cfg.with_counts, "include every count in the JSON report");
    common(rep);

    auto* rom = app.add_subcommand("romanoff", "density of odd n = p + 2^k");
    rom->add_option("--limit", cfg.limit, "upper end of the odd range");
    rom->add_option("--k-min", cfg.k_min, "smallest exponent (0 or 1)")->check(CLI::Range(0, 1));
    common(rom);

    auto* gen = app.add_subcommand("gen", "generate a special sequence");
    gen->add_option("kind,--kind", cfg.kind, "powers_of_two | divisor_chain | two_pow_prime")
        ->check(CLI::IsMember({"powers_of_two", "divisor_chain", "two_pow_prime"}));
    gen->add_option("--count", cfg.count, "number of terms")->check(CLI::PositiveNumber);
    gen->add_option("--ratio", cfg.ratio, "divisor_chain ratio (>= 2)");
    common(gen);

    auto* primes = app.add_subcommand("primes", "sieve statistics");
    primes->add_option("--limit", cfg.limit, "sieve bound");
    primes->add_option("--nth", cfg.nth, "also report the n-th prime (1-based)");
    common(primes);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.format = formats.at(format);
    cfg.threads = resolve_threads(threads_flag);
    return dispatch(cfg, out, err);
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace primeshift::cli
