#pragma once

// Quantitative side of the construction:
//
//   maynard_m(k)        largest m with k ln k > e^{8m+4} (0 if none)
//   guarantee(set)      prune, then m = max(maynard_m(l_s), 1) vs (1/8) ln l - 1.6
//   theorem1_bound      (1/8) ln l - 1.6
//   corollary_bound     (1/8) ln ln x - 1.6
//   verify_mertens      prod_{3<=p<=x} (1 - 1/p)^{-1} <= 0.923 ln x for 74 <= x <= x_max
//   verify_proof_constants, final_inequality_check
//
// All logarithms are natural.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primeshift/error.hpp"
#include "primeshift/integer_set.hpp"
#include "primeshift/interval.hpp"
#include "primeshift/primes.hpp"
#include "primeshift/prune.hpp"

namespace primeshift {

using HighFloat = boost::multiprecision::cpp_bin_float_100;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

inline constexpr double kBoundSlope = 0.125;
inline constexpr double kBoundOffset = 1.6;

namespace detail {

// floor((ln k + ln ln k - 4) / 8) adjusted for the strict inequality, in the
// given floating type. Requires k >= 2.
template <typename Float>
std::int64_t maynard_m_in(std::uint64_t k) {
    using std::floor;
    using std::log;
    const Float fk = static_cast<Float>(k);
    const Float q = (log(fk) + log(log(fk)) - Float(4)) / Float(8);
    const Float fl = floor(q);
    auto m = static_cast<std::int64_t>(fl);
    if (q == fl) --m;  // k ln k == e^{8m+4} is not "greater than"
    return m;
}

}  // namespace detail

/// Largest m >= 0 with k ln k > e^{8m+4}; 0 when even m = 0 fails.
inline std::uint64_t maynard_m(std::uint64_t k) {
    if (k == 0) throw DomainError("maynard_m: k must be positive");
    if (k < 3) return 0;  // k ln k <= 2 ln 2 < e^4

    const long double fk = static_cast<long double>(k);
    const long double q = (std::log(fk) + std::log(std::log(fk)) - 4.0L) / 8.0L;
    std::int64_t m;
    // Near an integer the rounding of the extended evaluation could decide the
    // strict inequality; re-evaluate with 100 decimal digits.
    if (std::fabs(q - std::nearbyint(q)) < 1e-9L) {
        m = detail::maynard_m_in<HighFloat>(k);
    } else {
        m = static_cast<std::int64_t>(std::floor(q));
    }
    return m < 0 ? 0 : static_cast<std::uint64_t>(m);
}

/// Least k with maynard_m(k) >= m, by binary search over the monotone map.
inline std::uint64_t maynard_threshold(std::uint64_t m) {
    std::uint64_t lo = 1;
    std::uint64_t hi = 2;
    while (maynard_m(hi) < m) {
        if (hi > (std::uint64_t{1} << 62)) throw DomainError("maynard_threshold: m too large");
        hi *= 2;
    }
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (maynard_m(mid) >= m) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

/// Alternate profile: largest m >= 1 with c m^2 e^{4m} <= k, for a caller-supplied
/// constant c > 0. Not used by guarantee(); the constant is not known explicitly.
inline std::uint64_t alternate_m(std::uint64_t k, double c) {
    if (k == 0) throw DomainError("alternate_m: k must be positive");
    if (!(c > 0.0)) throw DomainError("alternate_m: c must be positive");
    const long double lk = std::log(static_cast<long double>(k));
    std::uint64_t m = 0;
    for (std::uint64_t cand = 1;; ++cand) {
        const long double need = std::log(static_cast<long double>(c)) +
                                 2.0L * std::log(static_cast<long double>(cand)) + 4.0L * cand;
        if (need > lk) break;
        m = cand;
    }
    return m;
}

inline double theorem1_bound(std::uint64_t ell) {
    if (ell == 0) throw DomainError("theorem1_bound: ell must be positive");
    return kBoundSlope * std::log(static_cast<double>(ell)) - kBoundOffset;
}

inline double corollary_bound(double x) {
    if (!(x >= std::exp(1.0))) throw DomainError("corollary_bound: x must be at least e");
    return kBoundSlope * std::log(std::log(x)) - kBoundOffset;
}

struct GuaranteeReport {
    std::uint64_t ell = 0;
    std::uint64_t ell_s = 0;
    std::uint64_t s = 0;
    std::uint64_t p_s = 0;          // 0 when no pruning step ran
    std::uint64_t maynard = 0;      // maynard_m(ell_s), before the clamp
    std::uint64_t m = 1;            // max(maynard, 1)
    double theorem_bound = 0.0;
    bool satisfied = false;
};

inline GuaranteeReport guarantee_from_trace(const PruneTrace& trace) {
    GuaranteeReport r;
    r.ell = trace.input_size;
    r.ell_s = trace.final_set.size();
    r.s = trace.s();
    r.p_s = trace.last_prime();
    r.maynard = maynard_m(r.ell_s);
    // Infinitely many primes give at least one representation regardless.
    r.m = std::max<std::uint64_t>(r.maynard, 1);
    r.theorem_bound = theorem1_bound(r.ell);
    r.satisfied = static_cast<double>(r.m) > r.theorem_bound;
    return r;
}

inline GuaranteeReport guarantee(const IntegerSet& set) {
    return guarantee_from_trace(greedy_prune(set));
}

struct LemmaReport {
    std::string name;
    std::string checked_range;
    double margin = 0.0;  // minimal slack, conservative
    bool passed = false;  // margin > 0
    std::string note;
    std::optional<std::uint64_t> worst_at;
};

inline constexpr std::uint64_t kMertensStart = 74;

/// prod_{3<=p<=x} (1 - 1/p)^{-1} as an exact fraction; practical for x up to a few thousand.
inline cpp_rational mertens_product_exact(std::uint64_t x) {
    cpp_rational product = 1;
    for (std::uint64_t p : detail::small_primes(x)) {
        if (p < 3) continue;
        product *= cpp_rational(static_cast<std::int64_t>(p), static_cast<std::int64_t>(p - 1));
    }
    return product;
}

/// Checks prod_{3<=p<=x} (1 - 1/p)^{-1} <= 0.923 ln x for every real x in
/// [74, x_max]. The product is a step function jumping at primes while the
/// right side increases, so the ratio peaks at x = 74 and at each prime; those
/// are the only checkpoints. Evaluated in outward-rounded interval arithmetic;
/// the reported margin is (lower bound of 0.923 ln x) - (upper bound of product).
inline LemmaReport verify_mertens(std::uint64_t x_max) {
    if (x_max < kMertensStart) throw DomainError("verify_mertens: x_max must be at least 74");

    LemmaReport rep;
    rep.name = "mertens_0923";
    rep.checked_range = "x in [74, " + std::to_string(x_max) + "]";
    rep.note = "checked at x = 74 and every prime in (74, x_max]; between primes the product is "
               "constant while 0.923 ln x increases";

    const Interval coeff = Interval::enclosing(0.923);
    Interval product(1.0);
    bool first = true;
    double worst = 0.0;
    std::uint64_t worst_x = kMertensStart;

    auto check = [&](std::uint64_t x) {
        const Interval rhs = coeff * log(Interval(static_cast<double>(x)));
        const double slack = rhs.lo() - product.hi();
        if (first || slack < worst) {
            worst = slack;
            worst_x = x;
            first = false;
        }
    };

    for_each_prime(3, x_max, [&](std::uint64_t p) {
        if (p > kMertensStart) {
            // Primes below 74 are all folded in before x = 74 is checked.
            if (first) check(kMertensStart);
            const auto dp = static_cast<double>(p);
            product *= Interval(dp) / Interval(dp - 1.0);
            check(p);
        } else {
            const auto dp = static_cast<double>(p);
            product *= Interval(dp) / Interval(dp - 1.0);
        }
    });
    if (first) check(kMertensStart);

    rep.margin = worst;
    rep.worst_at = worst_x;
    rep.passed = worst > 0.0;
    return rep;
}

/// Lower bound for e^x (x >= 0 rational) from a truncated Taylor series.
inline cpp_rational exp_lower_bound(const cpp_rational& x, unsigned terms = 80) {
    cpp_rational sum = 1;
    cpp_rational term = 1;
    for (unsigned j = 1; j < terms; ++j) {
        term = term * x / j;
        sum += term;
    }
    return sum;
}

/// Three constants the pruning argument relies on:
///  (a) e^12 * prod_{i<=100} (1 - 1/p_i) > p_101
///  (b) p_101 = 547
///  (c) ln 546 / (1.846 ln 547) > 0.54
inline std::vector<LemmaReport> verify_proof_constants() {
    std::vector<LemmaReport> out;
    const PrimeTable table = sieve(1000);

    {
        LemmaReport a;
        a.name = "e12_product_exceeds_p101";
        a.checked_range = "i = 1..100";
        cpp_rational product = 1;
        for (std::size_t i = 1; i <= 100; ++i) {
            const auto p = static_cast<std::int64_t>(table.nth(i));
            product *= cpp_rational(p - 1, p);
        }
        const cpp_rational lhs = exp_lower_bound(12) * product;
        const cpp_rational diff = lhs - cpp_rational(static_cast<std::int64_t>(table.nth(101)));
        a.margin = static_cast<double>(diff);
        a.passed = diff > 0;
        a.note = "exact rational product; e^12 replaced by a Taylor-series lower bound";
        out.push_back(std::move(a));
    }

    {
        LemmaReport b;
        b.name = "p101_is_547";
        b.checked_range = "i = 101";
        const bool ok = table.nth(101) == 547;
        b.margin = ok ? 1.0 : -1.0;
        b.passed = ok;
        b.note = "exact equality; margin is +1 on match, -1 otherwise";
        out.push_back(std::move(b));
    }

    {
        LemmaReport c;
        c.name = "log_ratio_exceeds_054";
        c.checked_range = "ln 546 / (1.846 ln 547)";
        const Interval ratio = log(Interval(546.0)) /
                               (Interval::enclosing(1.846) * log(Interval(547.0)));
        c.margin = ratio.lo() - Interval::enclosing(0.54).hi();
        c.passed = c.margin > 0.0;
        c.note = "outward-rounded interval evaluation";
        out.push_back(std::move(c));
    }
    return out;
}

/// The closing step of the argument as an executable implication:
/// if l_s ln l_s >= 0.54 l then max(maynard_m(l_s), 1) > (1/8) ln l - 1.6.
inline bool final_inequality_check(std::uint64_t ell, std::uint64_t ell_s) {
    if (ell_s < 2) throw DomainError("final_inequality_check: ell_s must be at least 2");
    if (ell < ell_s) throw DomainError("final_inequality_check: ell must be at least ell_s");
    using std::log;
    const HighFloat ls = HighFloat(ell_s);
    const bool hypothesis = ls * log(ls) >= HighFloat("0.54") * HighFloat(ell);
    if (!hypothesis) return true;
    const auto m = std::max<std::uint64_t>(maynard_m(ell_s), 1);
    const HighFloat bound = log(HighFloat(ell)) / 8 - HighFloat("1.6");
    return HighFloat(m) > bound;
}

}  // namespace primeshift
