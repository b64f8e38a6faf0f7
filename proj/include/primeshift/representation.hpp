#pragma once

// The shifted-prime representation function
//     f_A(n) = #{ a in A : n - a is prime },
// exhaustive range searches for record values, the p + 2^k density count, and
// generators for the classical special sequences (2^i, divisor chains, 2^{p_i}).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "primeshift/error.hpp"
#include "primeshift/integer_set.hpp"
#include "primeshift/primes.hpp"

namespace primeshift {

inline constexpr std::uint64_t kMaxSearchWidth = 1'000'000'000;
inline constexpr std::uint64_t kDenseWidthLimit = 1'000'000;
inline constexpr std::uint64_t kMaxRomanoffLimit = 1'000'000'000;

namespace detail {

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw DomainError(std::string(what) + ": 64-bit overflow");
    return r;
}

}  // namespace detail

/// f_A(n). Throws DomainError if n - a leaves the 64-bit range for some a.
inline std::uint64_t rep_count(std::int64_t n, const IntegerSet& set) {
    detail::checked_sub(n, set.min(), "rep_count");
    detail::checked_sub(n, set.max(), "rep_count");
    std::uint64_t count = 0;
    for (std::int64_t a : set) count += is_prime(n - a) ? 1 : 0;
    return count;
}

struct Record {
    std::int64_t n;
    std::uint32_t count;
    friend bool operator==(const Record&, const Record&) = default;
};

/// Record order: larger count first, then smaller n.
inline bool record_before(const Record& x, const Record& y) {
    return x.count != y.count ? x.count > y.count : x.n < y.n;
}

enum class CountStorage { automatic, dense, sparse, none };

struct SearchOptions {
    unsigned threads = 1;
    CountStorage storage = CountStorage::automatic;
    std::uint64_t chunk_width = std::uint64_t{1} << 20;
    /// Shared sieve windows larger than this fall back to per-value Miller-Rabin.
    std::uint64_t max_window = std::uint64_t{1} << 26;
};

struct RepresentationProfile {
    IntegerSet set;
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 0;
    CountStorage storage = CountStorage::dense;  // resolved: dense, sparse or none
    std::vector<std::uint32_t> dense;            // dense[n - n_lo]
    std::vector<Record> sparse;                  // ascending n, count >= 1
    std::vector<Record> records;                 // top-K in record order
    std::uint64_t total = 0;                     // sum of f_A(n) over the range
    std::map<std::uint32_t, std::uint64_t> histogram;  // count -> number of n

    std::uint32_t max_count() const noexcept { return records.empty() ? 0 : records.front().count; }

    /// f_A(n) for n in range, read back from stored counts.
    std::uint32_t count_at(std::int64_t n) const {
        if (n < n_lo || n > n_hi) throw BoundsError("count_at: n outside searched range");
        switch (storage) {
            case CountStorage::dense:
                return dense[static_cast<std::size_t>(n - n_lo)];
            case CountStorage::sparse: {
                auto it = std::lower_bound(sparse.begin(), sparse.end(), n,
                                           [](const Record& r, std::int64_t v) { return r.n < v; });
                return it != sparse.end() && it->n == n ? it->count : 0;
            }
            default:
                throw BoundsError("count_at: counts were not retained");
        }
    }
};

namespace detail {

struct ChunkResult {
    std::vector<std::uint32_t> counts;
    std::vector<Record> nonzero;
    std::vector<Record> top;
    std::uint64_t total = 0;
    std::vector<std::uint64_t> histogram;  // index = count
};

inline void keep_top(std::vector<Record>& recs, std::size_t k) {
    if (recs.size() > k) {
        std::partial_sort(recs.begin(), recs.begin() + static_cast<std::ptrdiff_t>(k), recs.end(),
                          record_before);
        recs.resize(k);
    } else {
        std::sort(recs.begin(), recs.end(), record_before);
    }
}

}  // namespace detail

/// Exact f_A(n) for every n in [n_lo, n_hi], plus the top_k records.
inline RepresentationProfile rep_search(const IntegerSet& set, std::int64_t n_lo,
                                        std::int64_t n_hi, std::size_t top_k,
                                        const SearchOptions& opts = {}) {
    if (n_hi < n_lo) throw DomainError("rep_search: n_lo must not exceed n_hi");
    if (top_k == 0) throw DomainError("rep_search: top_k must be positive");
    const std::uint64_t width = static_cast<std::uint64_t>(n_hi) - static_cast<std::uint64_t>(n_lo) + 1;
    if (width > kMaxSearchWidth)
        throw ResourceError("rep_search: range width " + std::to_string(width) + " exceeds 10^9");
    detail::checked_sub(n_lo, set.max(), "rep_search");
    const std::int64_t window_hi = detail::checked_sub(n_hi, set.min(), "rep_search");

    RepresentationProfile prof{set, n_lo, n_hi, CountStorage::dense, {}, {}, {}, 0, {}};
    prof.storage = opts.storage == CountStorage::automatic
                       ? (width <= kDenseWidthLimit ? CountStorage::dense : CountStorage::sparse)
                       : opts.storage;

    const std::uint64_t span = static_cast<std::uint64_t>(set.max()) - static_cast<std::uint64_t>(set.min());
    const std::uint64_t chunk = std::max<std::uint64_t>(opts.chunk_width, 1);
    const std::uint64_t chunks = (width + chunk - 1) / chunk;
    // A per-chunk window covers [c_lo - max A, c_hi - min A].
    const bool use_window = span <= opts.max_window && window_hi > 1 &&
                            static_cast<std::uint64_t>(window_hi) <= (std::uint64_t{1} << 42);
    const std::vector<std::uint64_t> base =
        use_window ? detail::small_primes(detail::isqrt(static_cast<std::uint64_t>(window_hi)))
                   : std::vector<std::uint64_t>{};

    std::vector<detail::ChunkResult> results(chunks);
    auto run_chunk = [&](std::uint64_t ci) {
        const std::int64_t c_lo = n_lo + static_cast<std::int64_t>(ci * chunk);
        const std::uint64_t c_width = std::min(chunk, width - ci * chunk);
        const std::int64_t c_hi = c_lo + static_cast<std::int64_t>(c_width - 1);
        auto& res = results[ci];
        res.counts.assign(c_width, 0);
        if (use_window) {
            const PrimeWindow window(c_lo - set.max(), c_hi - set.min(), base);
            for (std::int64_t a : set) {
                for (std::uint64_t i = 0; i < c_width; ++i)
                    res.counts[i] += window.is_prime(c_lo + static_cast<std::int64_t>(i) - a);
            }
        } else {
            for (std::uint64_t i = 0; i < c_width; ++i)
                res.counts[i] = static_cast<std::uint32_t>(
                    rep_count(c_lo + static_cast<std::int64_t>(i), set));
        }
        for (std::uint64_t i = 0; i < c_width; ++i) {
            const std::uint32_t c = res.counts[i];
            res.total += c;
            if (c >= res.histogram.size()) res.histogram.resize(c + 1, 0);
            ++res.histogram[c];
            res.top.push_back({c_lo + static_cast<std::int64_t>(i), c});
        }
        detail::keep_top(res.top, top_k);
        res.top.shrink_to_fit();
        if (prof.storage != CountStorage::dense) {
            if (prof.storage == CountStorage::sparse) {
                for (std::uint64_t i = 0; i < c_width; ++i)
                    if (res.counts[i] > 0)
                        res.nonzero.push_back({c_lo + static_cast<std::int64_t>(i), res.counts[i]});
            }
            res.counts = {};
        }
    };

    const unsigned threads = std::max(1U, opts.threads);
    if (threads == 1 || chunks == 1) {
        for (std::uint64_t ci = 0; ci < chunks; ++ci) run_chunk(ci);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::uint64_t ci = t; ci < chunks; ci += threads) run_chunk(ci);
            });
        }
    }

    if (prof.storage == CountStorage::dense) prof.dense.reserve(width);
    for (std::uint64_t ci = 0; ci < chunks; ++ci) {
        auto& res = results[ci];
        if (prof.storage == CountStorage::dense) {
            prof.dense.insert(prof.dense.end(), res.counts.begin(), res.counts.end());
        } else if (prof.storage == CountStorage::sparse) {
            prof.sparse.insert(prof.sparse.end(), res.nonzero.begin(), res.nonzero.end());
        }
        prof.total += res.total;
        for (std::size_t c = 0; c < res.histogram.size(); ++c)
            if (res.histogram[c] > 0) prof.histogram[static_cast<std::uint32_t>(c)] += res.histogram[c];
        prof.records.insert(prof.records.end(), res.top.begin(), res.top.end());
        res = {};
    }
    detail::keep_top(prof.records, top_k);
    return prof;
}

struct RomanoffCount {
    std::uint64_t limit = 0;
    unsigned k_min = 1;
    std::uint64_t representable = 0;
    std::uint64_t odd_total = 0;

    double density() const noexcept {
        return odd_total == 0 ? 0.0
                              : static_cast<double>(representable) / static_cast<double>(odd_total);
    }
};

/// Counts odd n in [3, limit] expressible as p + 2^k with p prime and k >= k_min.
inline RomanoffCount romanoff_count(std::uint64_t limit, unsigned k_min, unsigned threads = 1) {
    if (limit < 3) throw DomainError("romanoff: limit must be at least 3");
    if (limit > kMaxRomanoffLimit) throw ResourceError("romanoff: limit exceeds 10^9");
    if (k_min > 1) throw DomainError("romanoff: k_min must be 0 or 1");

    const PrimeBitset primes(limit);
    const std::uint64_t odd_total = (limit - 1) / 2;  // 3, 5, ..., <= limit
    threads = std::max(1U, threads);
    std::vector<std::uint64_t> hits(threads, 0);

    auto work = [&](unsigned t) {
        const std::uint64_t per = (odd_total + threads - 1) / threads;
        const std::uint64_t first = t * per;
        const std::uint64_t last = std::min(odd_total, first + per);
        std::uint64_t local = 0;
        for (std::uint64_t i = first; i < last; ++i) {
            const auto n = static_cast<std::int64_t>(2 * i + 3);
            for (std::int64_t pow = std::int64_t{1} << k_min; pow < n; pow <<= 1) {
                if (primes.is_prime(n - pow)) {
                    ++local;
                    break;
                }
            }
        }
        hits[t] = local;
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }

    RomanoffCount out{limit, k_min, 0, odd_total};
    for (auto h : hits) out.representable += h;
    return out;
}

inline double romanoff_density(std::uint64_t limit, unsigned k_min = 1, unsigned threads = 1) {
    return romanoff_count(limit, k_min, threads).density();
}

enum class SequenceKind { powers_of_two, divisor_chain, two_pow_prime };

inline const char* to_string(SequenceKind k) {
    switch (k) {
        case SequenceKind::powers_of_two: return "powers_of_two";
        case SequenceKind::divisor_chain: return "divisor_chain";
        case SequenceKind::two_pow_prime: return "two_pow_prime";
    }
    return "?";
}

/// powers_of_two: {2^1..2^count}; divisor_chain: {r^1..r^count};
/// two_pow_prime: {2^{p_1}..2^{p_count}}.
inline IntegerSet gen_sequence(SequenceKind kind, std::uint64_t count, std::uint64_t seed_ratio = 2) {
    if (count == 0) throw DomainError("gen_sequence: count must be positive");
    std::vector<std::int64_t> out;
    switch (kind) {
        case SequenceKind::powers_of_two:
            if (count > 62) throw DomainError("gen_sequence: 2^count overflows for count > 62");
            for (std::uint64_t i = 1; i <= count; ++i) out.push_back(std::int64_t{1} << i);
            break;
        case SequenceKind::divisor_chain: {
            if (seed_ratio < 2) throw DomainError("gen_sequence: ratio must be at least 2");
            std::int64_t v = 1;
            for (std::uint64_t i = 1; i <= count; ++i) {
                if (__builtin_mul_overflow(v, static_cast<std::int64_t>(seed_ratio), &v))
                    throw DomainError("gen_sequence: ratio^count overflows 64 bits");
                out.push_back(v);
            }
            break;
        }
        case SequenceKind::two_pow_prime: {
            if (count > 18) throw DomainError("gen_sequence: 2^{p_count} overflows for count > 18");
            const PrimeTable table = sieve(64);
            for (std::uint64_t i = 1; i <= count; ++i)
                out.push_back(std::int64_t{1} << table.nth(static_cast<std::size_t>(i)));
            break;
        }
    }
    return IntegerSet::from_sorted(std::move(out));
}

}  // namespace primeshift
