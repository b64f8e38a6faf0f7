#pragma once

// Prime generation and primality testing.
//
//   is_prime(n)        deterministic Miller-Rabin, exact on all of int64/uint64
//   sieve(limit)       PrimeTable of every prime <= limit (segmented above 1e8)
//   PrimeWindow        byte-per-value primality map over an arbitrary [lo, hi]
//   nth_prime(i)       1-indexed, nth_prime(1) == 2

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "primeshift/error.hpp"

namespace primeshift {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

// One strong-probable-prime round; n odd, n > 2, d * 2^r == n - 1.
inline bool strong_probable_prime(std::uint64_t n, std::uint64_t witness, std::uint64_t d,
                                  unsigned r) {
    witness %= n;
    if (witness == 0) return true;
    std::uint64_t x = pow_mod(witness, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

inline std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Plain odd-only sieve of Eratosthenes; used for base primes and small tables.
inline std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    out.push_back(2);
    if (limit < 3) return out;
    const std::uint64_t odd_count = (limit - 1) / 2;  // 3, 5, ..., <= limit
    std::vector<std::uint8_t> composite(odd_count, 0);
    for (std::uint64_t i = 0; i < odd_count; ++i) {
        if (composite[i]) continue;
        const std::uint64_t p = 2 * i + 3;
        out.push_back(p);
        for (std::uint64_t j = (p * p - 3) / 2; j < odd_count; j += p) composite[j] = 1;
    }
    return out;
}

// Marks composites in [lo, hi] (lo >= 2) given every prime <= sqrt(hi).
// flags[v - lo] == 1 iff v is prime.
inline void sieve_segment(std::uint64_t lo, std::uint64_t hi,
                          const std::vector<std::uint64_t>& base,
                          std::vector<std::uint8_t>& flags) {
    flags.assign(hi - lo + 1, 1);
    for (std::uint64_t p : base) {
        if (p * p > hi) break;
        std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
        for (std::uint64_t m = start; m <= hi; m += p) flags[m - lo] = 0;
    }
}

}  // namespace detail

/// Deterministic primality for any signed 64-bit value; negatives, 0 and 1 are not prime.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 41 * 41) return true;

    std::uint64_t d = n - 1;
    unsigned r = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++r;
    }
    // Sinclair's seven bases are a proven deterministic set below 2^64.
    constexpr std::uint64_t witnesses[] = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
    for (std::uint64_t a : witnesses) {
        if (!detail::strong_probable_prime(n, a, d, r)) return false;
    }
    return true;
}

inline bool is_prime(std::int64_t n) {
    return n >= 2 && is_prime(static_cast<std::uint64_t>(n));
}

inline bool is_prime(int n) { return is_prime(static_cast<std::int64_t>(n)); }

/// Immutable ascending list of every prime <= limit.
class PrimeTable {
public:
    PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
        : limit_(limit), primes_(std::move(primes)) {}

    std::uint64_t limit() const noexcept { return limit_; }
    std::size_t count() const noexcept { return primes_.size(); }
    const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }

    /// 1-indexed: nth(1) == 2.
    std::uint64_t nth(std::size_t i) const {
        if (i == 0) throw DomainError("prime index is 1-based; got 0");
        if (i > primes_.size())
            throw BoundsError("prime index " + std::to_string(i) + " exceeds table of " +
                              std::to_string(primes_.size()));
        return primes_[i - 1];
    }

    bool contains(std::uint64_t n) const {
        return std::binary_search(primes_.begin(), primes_.end(), n);
    }

    /// Number of primes <= x (x may exceed nothing beyond limit()).
    std::size_t pi(std::uint64_t x) const {
        return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) -
                                        primes_.begin());
    }

private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
};

struct SieveOptions {
    std::uint64_t segment_size = std::uint64_t{1} << 20;
    /// Above this limit the sieve runs segment by segment.
    std::uint64_t segmented_above = 100'000'000;
    unsigned threads = 1;
};

inline constexpr std::uint64_t kMaxSieveLimit = std::uint64_t{1} << 40;

/// Calls fn(p) for each prime p in [lo, hi] in ascending order.
inline void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                           const std::function<void(std::uint64_t)>& fn,
                           std::uint64_t segment_size = std::uint64_t{1} << 20) {
    lo = std::max<std::uint64_t>(lo, 2);
    if (hi < lo) return;
    const auto base = detail::small_primes(detail::isqrt(hi));
    std::vector<std::uint8_t> flags;
    for (std::uint64_t seg_lo = lo; seg_lo <= hi;) {
        const std::uint64_t seg_hi = hi - seg_lo < segment_size ? hi : seg_lo + segment_size - 1;
        detail::sieve_segment(seg_lo, seg_hi, base, flags);
        for (std::uint64_t v = seg_lo; v <= seg_hi; ++v)
            if (flags[v - seg_lo]) fn(v);
        if (seg_hi == hi) break;
        seg_lo = seg_hi + 1;
    }
}

inline PrimeTable sieve(std::uint64_t limit, const SieveOptions& opts = {}) {
    if (limit < 2 || limit > kMaxSieveLimit)
        throw BoundsError("sieve limit must lie in [2, 2^40]; got " + std::to_string(limit));
    if (limit <= opts.segmented_above) return PrimeTable(limit, detail::small_primes(limit));

    const std::uint64_t seg = std::max<std::uint64_t>(opts.segment_size, 1024);
    const unsigned threads = std::max(1U, opts.threads);
    const std::uint64_t span = limit - 1;  // values 2..limit
    const std::uint64_t chunk = (span + threads - 1) / threads;

    std::vector<std::vector<std::uint64_t>> parts(threads);
    auto work = [&](unsigned idx) {
        const std::uint64_t lo = 2 + idx * chunk;
        if (lo > limit) return;
        const std::uint64_t hi = std::min(limit, lo + chunk - 1);
        for_each_prime(lo, hi, [&](std::uint64_t p) { parts[idx].push_back(p); }, seg);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }

    std::vector<std::uint64_t> all;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    all.reserve(total);
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    return PrimeTable(limit, std::move(all));
}

/// Upper bound on the i-th prime (Rosser: p_i < i(ln i + ln ln i) for i >= 6).
inline std::uint64_t nth_prime_upper_bound(std::uint64_t i) {
    if (i < 6) return 13;
    const long double x = static_cast<long double>(i);
    return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 3;
}

/// 1-indexed i-th prime; sieves just far enough to reach it.
inline std::uint64_t nth_prime(std::uint64_t i) {
    if (i == 0) throw DomainError("nth_prime: index is 1-based; got 0");
    const std::uint64_t bound = nth_prime_upper_bound(i);
    if (bound > kMaxSieveLimit) throw BoundsError("nth_prime: index too large");
    return sieve(bound).nth(static_cast<std::size_t>(i));
}

/// Primality lookup over a contiguous window [lo, hi] of signed values.
/// Values below 2 are simply non-prime. `base` must hold every prime <= sqrt(hi).
class PrimeWindow {
public:
    PrimeWindow(std::int64_t lo, std::int64_t hi, const std::vector<std::uint64_t>& base)
        : lo_(lo), hi_(hi) {
        const std::int64_t first = std::max<std::int64_t>(lo, 2);
        if (hi < first) return;
        first_ = first;
        detail::sieve_segment(static_cast<std::uint64_t>(first), static_cast<std::uint64_t>(hi),
                              base, flags_);
    }

    PrimeWindow(std::int64_t lo, std::int64_t hi)
        : PrimeWindow(lo, hi,
                      detail::small_primes(hi < 4 ? 2 : detail::isqrt(static_cast<std::uint64_t>(hi)))) {}

    std::int64_t lo() const noexcept { return lo_; }
    std::int64_t hi() const noexcept { return hi_; }

    /// Caller guarantees lo() <= v <= hi().
    bool is_prime(std::int64_t v) const noexcept {
        return !flags_.empty() && v >= first_ && flags_[static_cast<std::size_t>(v - first_)];
    }

private:
    std::int64_t lo_;
    std::int64_t hi_;
    std::int64_t first_ = 2;
    std::vector<std::uint8_t> flags_;
};

/// One bit per odd number up to `limit`; 2 handled separately.
class PrimeBitset {
public:
    explicit PrimeBitset(std::uint64_t limit) : limit_(limit), words_(limit / 128 + 1, 0) {
        for_each_prime(3, limit, [this](std::uint64_t p) {
            const std::uint64_t i = p >> 1U;
            words_[i >> 6U] |= std::uint64_t{1} << (i & 63U);
        });
    }

    std::uint64_t limit() const noexcept { return limit_; }

    /// Caller guarantees v <= limit().
    bool is_prime(std::int64_t v) const noexcept {
        if (v < 2) return false;
        if (v == 2) return true;
        if ((v & 1) == 0) return false;
        const auto i = static_cast<std::uint64_t>(v) >> 1U;
        return (words_[i >> 6U] >> (i & 63U)) & 1U;
    }

private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> words_;
};

}  // namespace primeshift
