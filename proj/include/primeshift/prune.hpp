#pragma once

// Greedy residue-class pruning.
//
// Starting from l distinct integers, step t looks at the survivors modulo the
// t-th prime p_t and throws away the least-populated residue class. Afterwards
// the survivors occupy at most p_t - 1 classes mod p_t. The process stops at
// the least s with (survivors after step s) < p_{s+1}; at that point the
// survivors cannot cover any larger prime either, so they form an admissible
// set.
//
// The least-populated class holds at most floor(n / p) of n survivors, so the
// survivor count always dominates the proxy recurrence
//     l_t = l_{t-1} - floor(l_{t-1} / p_t),   l_0 = l,
// which in turn dominates l * prod_{i<=t} (1 - 1/p_i).

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "primeshift/integer_set.hpp"
#include "primeshift/primes.hpp"

namespace primeshift {

struct PruneStep {
    std::size_t index = 0;         // t, 1-based
    std::uint64_t prime = 0;       // p_t
    std::uint64_t removed_residue = 0;
    std::uint64_t removed_count = 0;
    std::uint64_t survivors_actual = 0;
    std::uint64_t survivors_proxy = 0;  // proxy recurrence l_t
};

struct PruneTrace {
    std::uint64_t input_size = 0;
    std::vector<PruneStep> steps;
    IntegerSet final_set;
    std::uint64_t stop_prime = 0;  // p_{s+1}

    std::size_t s() const noexcept { return steps.size(); }

    /// p_s, or 0 when no step was taken.
    std::uint64_t last_prime() const noexcept { return steps.empty() ? 0 : steps.back().prime; }
};

namespace detail {

// Enough primes to reach p_{s+1}: every pruning prime is <= l, and by
// Bertrand's postulate the next one is below 2l.
inline std::vector<std::uint64_t> pruning_primes(std::uint64_t ell) {
    return small_primes(std::max<std::uint64_t>(2 * ell + 2, 4));
}

}  // namespace detail

inline PruneTrace greedy_prune(const IntegerSet& set) {
    const auto primes = detail::pruning_primes(set.size());
    std::vector<std::int64_t> survivors(set.begin(), set.end());
    std::uint64_t proxy = survivors.size();

    std::vector<PruneStep> steps;
    std::vector<std::uint64_t> counts;
    std::size_t t = 0;
    while (survivors.size() >= primes[t]) {
        const std::uint64_t p = primes[t];
        ++t;

        counts.assign(p, 0);
        for (std::int64_t a : survivors) ++counts[residue(a, p)];

        PruneStep step;
        step.index = t;
        step.prime = p;

        auto empty = std::find(counts.begin(), counts.end(), 0U);
        if (empty != counts.end()) {
            // Already misses a class mod p: nothing to remove.
            step.removed_residue = static_cast<std::uint64_t>(empty - counts.begin());
            step.removed_count = 0;
        } else {
            // Fewest survivors; ties go to the largest residue.
            std::uint64_t best = p - 1;
            for (std::uint64_t r = p - 1; r-- > 0;)
                if (counts[r] < counts[best]) best = r;
            step.removed_residue = best;
            step.removed_count = counts[best];
            std::erase_if(survivors, [&](std::int64_t a) { return residue(a, p) == best; });
        }

        proxy -= proxy / p;
        step.survivors_actual = survivors.size();
        step.survivors_proxy = proxy;
        steps.push_back(step);
    }

    PruneTrace trace{set.size(), std::move(steps), IntegerSet::from_sorted(std::move(survivors)),
                     primes[t]};
    return trace;
}

/// The proxy sequence l_0 = l, l_t = l_{t-1} - floor(l_{t-1}/p_t), run until its
/// own stopping index (least s with l_s < p_{s+1}). Returns l_0..l_s.
inline std::vector<std::uint64_t> proxy_recurrence(std::uint64_t ell) {
    const auto primes = detail::pruning_primes(ell);
    std::vector<std::uint64_t> seq{ell};
    std::size_t t = 0;
    while (seq.back() >= primes[t]) {
        seq.push_back(seq.back() - seq.back() / primes[t]);
        ++t;
    }
    return seq;
}

/// Exact check of  |final| >= l * prod_{i<=s} (1 - 1/p_i), i.e.
/// |final| * prod p_i >= l * prod (p_i - 1) over big integers.
inline bool product_lower_bound_holds(const PruneTrace& trace) {
    using boost::multiprecision::cpp_int;
    cpp_int lhs = trace.final_set.size();
    cpp_int rhs = trace.input_size;
    for (const auto& step : trace.steps) {
        lhs *= step.prime;
        rhs *= step.prime - 1;
    }
    return lhs >= rhs;
}

}  // namespace primeshift
