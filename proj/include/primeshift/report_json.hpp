#pragma once

// JSON encodings of every report type. Integers with |v| >= 2^53 are written
// as decimal strings so that no consumer loses precision; object keys are
// emitted in sorted order, which makes output byte-stable.

#include <cstdint>
#include <ostream>
#include <string>

#include "json.hpp"

#include "primeshift/admissible.hpp"
#include "primeshift/bounds.hpp"
#include "primeshift/integer_set.hpp"
#include "primeshift/primes.hpp"
#include "primeshift/prune.hpp"
#include "primeshift/representation.hpp"

namespace primeshift::report {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr std::uint64_t kExactLimit = std::uint64_t{1} << 53;

inline json integer(std::int64_t v) {
    const std::uint64_t mag = v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    if (mag < kExactLimit) return v;
    return std::to_string(v);
}

inline json integer(std::uint64_t v) {
    if (v < kExactLimit) return v;
    return std::to_string(v);
}

/// Inverse of integer(): accepts a JSON number or a decimal string.
inline std::int64_t to_int64(const json& j) {
    if (j.is_string()) return std::stoll(j.get<std::string>());
    return j.get<std::int64_t>();
}

inline json integers(const IntegerSet& set) {
    json arr = json::array();
    for (std::int64_t v : set) arr.push_back(integer(v));
    return arr;
}

inline json set_summary(const IntegerSet& set, const std::string& source) {
    return {{"source", source},
            {"size", integer(static_cast<std::uint64_t>(set.size()))},
            {"min", integer(set.min())},
            {"max", integer(set.max())}};
}

inline json to_json(const AdmissibilityCertificate& cert) {
    json missed = json::array();
    for (const auto& w : cert.missed)
        missed.push_back({{"prime", integer(w.prime)}, {"residue", integer(w.residue)}});
    return {{"verdict", to_string(cert.verdict)},
            {"covering_prime", cert.covering_prime ? integer(*cert.covering_prime) : json(nullptr)},
            {"missed", std::move(missed)}};
}

inline json to_json(const PruneStep& st) {
    return {{"t", integer(static_cast<std::uint64_t>(st.index))},
            {"prime", integer(st.prime)},
            {"removed_residue", integer(st.removed_residue)},
            {"removed_count", integer(st.removed_count)},
            {"survivors_actual", integer(st.survivors_actual)},
            {"survivors_proxy", integer(st.survivors_proxy)}};
}

inline json to_json(const PruneTrace& tr) {
    json steps = json::array();
    for (const auto& st : tr.steps) steps.push_back(to_json(st));
    return {{"input_size", integer(tr.input_size)},
            {"s", integer(static_cast<std::uint64_t>(tr.s()))},
            {"last_prime", integer(tr.last_prime())},
            {"stop_prime", integer(tr.stop_prime)},
            {"final_size", integer(static_cast<std::uint64_t>(tr.final_set.size()))},
            {"final_set", integers(tr.final_set)},
            {"steps", std::move(steps)}};
}

inline json to_json(const GuaranteeReport& r) {
    return {{"ell", integer(r.ell)},
            {"ell_s", integer(r.ell_s)},
            {"s", integer(r.s)},
            {"p_s", integer(r.p_s)},
            {"maynard_m", integer(r.maynard)},
            {"m", integer(r.m)},
            {"theorem_bound", r.theorem_bound},
            {"satisfied", r.satisfied}};
}

inline json to_json(const LemmaReport& r) {
    json j = {{"name", r.name},
              {"checked_range", r.checked_range},
              {"margin", r.margin},
              {"passed", r.passed},
              {"note", r.note}};
    j["worst_at"] = r.worst_at ? integer(*r.worst_at) : json(nullptr);
    return j;
}

inline json to_json(const Record& r) {
    return {{"n", integer(r.n)}, {"count", r.count}};
}

inline const char* to_string(CountStorage s) {
    switch (s) {
        case CountStorage::dense: return "dense";
        case CountStorage::sparse: return "sparse";
        case CountStorage::none: return "none";
        default: return "automatic";
    }
}

/// Counts are included only when requested; dense counts become an array
/// indexed from n_lo, sparse counts a list of {n, count}.
inline json to_json(const RepresentationProfile& p, bool with_counts) {
    json records = json::array();
    for (const auto& r : p.records) records.push_back(to_json(r));
    json hist = json::array();
    for (const auto& [c, f] : p.histogram) hist.push_back({{"count", c}, {"frequency", integer(f)}});
    json j = {{"from", integer(p.n_lo)},
              {"to", integer(p.n_hi)},
              {"storage", to_string(p.storage)},
              {"records", std::move(records)},
              {"max_count", p.max_count()},
              {"total", integer(p.total)},
              {"histogram", std::move(hist)}};
    if (with_counts) {
        if (p.storage == CountStorage::dense) {
            j["counts"] = p.dense;
        } else if (p.storage == CountStorage::sparse) {
            json arr = json::array();
            for (const auto& r : p.sparse) arr.push_back(to_json(r));
            j["counts"] = std::move(arr);
        }
    }
    return j;
}

inline json to_json(const RomanoffCount& r) {
    return {{"limit", integer(r.limit)},
            {"k_min", r.k_min},
            {"representable", integer(r.representable)},
            {"odd_total", integer(r.odd_total)},
            {"density", r.density()}};
}

inline json envelope(const std::string& subcommand, json input_summary, json result) {
    return {{"version", kSchemaVersion},
            {"subcommand", subcommand},
            {"input_summary", std::move(input_summary)},
            {"result", std::move(result)}};
}

/// CSV export of (n, count) pairs; dense profiles list every n.
inline void write_csv(std::ostream& out, const RepresentationProfile& p) {
    out << "n,count\n";
    if (p.storage == CountStorage::dense) {
        for (std::size_t i = 0; i < p.dense.size(); ++i)
            out << p.n_lo + static_cast<std::int64_t>(i) << ',' << p.dense[i] << '\n';
    } else {
        for (const auto& r : p.sparse) out << r.n << ',' << r.count << '\n';
    }
}

}  // namespace primeshift::report
