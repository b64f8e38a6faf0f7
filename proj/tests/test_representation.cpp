#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "primeshift/representation.hpp"

using namespace primeshift;

namespace {

bool trial_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Double loop over (n, a) with trial division; shares nothing with the library.
std::vector<std::uint32_t> brute_counts(const std::vector<std::int64_t>& a, std::int64_t lo,
                                        std::int64_t hi) {
    std::vector<std::uint32_t> out;
    for (std::int64_t n = lo; n <= hi; ++n) {
        std::uint32_t c = 0;
        for (auto x : a) c += trial_prime(n - x);
        out.push_back(c);
    }
    return out;
}

}  // namespace

TEST(RepCount, Examples) {
    EXPECT_EQ(rep_count(5, {1, 2, 3}), 2U);
    EXPECT_EQ(rep_count(2, {0}), 1U);
    EXPECT_EQ(rep_count(0, {5}), 0U);
    EXPECT_EQ(rep_count(-3, {-5, -6, -4}), 2U);  // 2 and 3 prime, 1 not
}

TEST(RepCount, OverflowIsDomainError) {
    EXPECT_THROW(rep_count(std::numeric_limits<std::int64_t>::min(), {1}), DomainError);
    EXPECT_THROW(rep_count(std::numeric_limits<std::int64_t>::max(), {-1}), DomainError);
}

TEST(RepSearch, PrimeIndicator) {
    const auto prof = rep_search({0}, 2, 30, 3);
    EXPECT_EQ(prof.total, 10U);  // pi(30)
    ASSERT_EQ(prof.records.size(), 3U);
    EXPECT_EQ(prof.records[0], (Record{2, 1}));
    EXPECT_EQ(prof.records[1], (Record{3, 1}));
    EXPECT_EQ(prof.records[2], (Record{5, 1}));
    EXPECT_EQ(prof.storage, CountStorage::dense);
    EXPECT_EQ(prof.histogram.at(1), 10U);
    EXPECT_EQ(prof.histogram.at(0), 19U);
}

TEST(RepSearch, PowersOfTwoUpToTenThousandthPower) {
    // Python sieve brute force: max f = 8, first reached at n = 1095.
    const auto a = gen_sequence(SequenceKind::powers_of_two, 10);
    const auto prof = rep_search(a, 3, 100'000, 5);
    EXPECT_EQ(prof.max_count(), 8U);
    EXPECT_EQ(prof.records.front().n, 1095);
    EXPECT_GE(prof.max_count(), 4U);
    EXPECT_EQ(rep_count(1095, a), 8U);
}

TEST(RepSearch, NoSolutions) {
    const auto prof = rep_search({1'000'000}, 2, 100, 4);
    EXPECT_EQ(prof.total, 0U);
    EXPECT_EQ(prof.max_count(), 0U);
    for (std::int64_t n = 2; n <= 100; ++n) EXPECT_EQ(prof.count_at(n), 0U);
    EXPECT_EQ(prof.records.front(), (Record{2, 0}));
}

TEST(RepSearch, MatchesDoubleLoop) {
    std::vector<std::vector<std::int64_t>> sets = {
        {0}, {1, 2, 3}, {2, 4, 6, 8, 10, 12, 14, 16, 18, 20}, {-7, 0, 5, 31, 1000, 9999}};
    for (const auto& v : sets) {
        const auto a = IntegerSet::from_unsorted(v);
        const auto expected = brute_counts(v, 0, 10'000);
        const auto prof = rep_search(a, 0, 10'000, 10);
        ASSERT_EQ(prof.dense, expected);
    }
}

TEST(RepSearch, StoragePathsAndThreadsAgree) {
    const auto a = IntegerSet{-3, 4, 10, 64, 255, 1024, 5000};
    const auto dense = rep_search(a, -2000, 40'000, 20);

    SearchOptions sparse;
    sparse.storage = CountStorage::sparse;
    sparse.chunk_width = 4097;
    sparse.threads = 3;
    const auto sp = rep_search(a, -2000, 40'000, 20, sparse);

    SearchOptions mr;
    mr.max_window = 0;  // per-value Miller-Rabin
    mr.chunk_width = 10'000;
    mr.threads = 2;
    const auto viamr = rep_search(a, -2000, 40'000, 20, mr);

    EXPECT_EQ(dense.records, sp.records);
    EXPECT_EQ(dense.records, viamr.records);
    EXPECT_EQ(dense.dense, viamr.dense);
    EXPECT_EQ(dense.total, sp.total);
    EXPECT_EQ(dense.histogram, sp.histogram);
    for (std::int64_t n = -2000; n <= 40'000; ++n) ASSERT_EQ(dense.count_at(n), sp.count_at(n));
    for (const auto& r : sp.sparse) ASSERT_GE(r.count, 1U);
}

TEST(RepSearch, RecordsAreTrueTopK) {
    const auto a = gen_sequence(SequenceKind::divisor_chain, 6, 3);
    const auto prof = rep_search(a, 0, 50'000, 25);
    std::vector<Record> all;
    for (std::int64_t n = 0; n <= 50'000; ++n) all.push_back({n, prof.count_at(n)});
    std::sort(all.begin(), all.end(), record_before);
    all.resize(25);
    EXPECT_EQ(prof.records, all);
}

TEST(RepSearch, ShiftCovariance) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<std::int64_t> elem(-500, 500);
    std::uniform_int_distribution<std::int64_t> shift(-100'000, 100'000);
    for (int trial = 0; trial < 20; ++trial) {
        std::set<std::int64_t> s;
        while (s.size() < 8) s.insert(elem(rng));
        const std::int64_t c = shift(rng);
        std::vector<std::int64_t> shifted;
        for (auto x : s) shifted.push_back(x + c);
        const auto a = IntegerSet::from_sorted({s.begin(), s.end()});
        const auto b = IntegerSet::from_sorted(shifted);
        for (std::int64_t n = -600; n <= 2000; n += 7) ASSERT_EQ(rep_count(n + c, b), rep_count(n, a));
    }
}

TEST(RepSearch, TotalEqualsPrimeCountsPerShift) {
    const std::int64_t N = 200'000;
    const auto table = sieve(static_cast<std::uint64_t>(N) + 100);
    auto primes_in = [&](std::int64_t lo, std::int64_t hi) -> std::uint64_t {
        if (hi < 2) return 0;
        lo = std::max<std::int64_t>(lo, 2);
        return table.pi(static_cast<std::uint64_t>(hi)) - table.pi(static_cast<std::uint64_t>(lo - 1));
    };
    for (const auto& a : {IntegerSet{0, 2, 10, 44, 98}, IntegerSet{1, 3, 17, 33, 65}}) {
        std::uint64_t expected = 0;
        for (auto x : a) expected += primes_in(2 - x, N - x);
        EXPECT_EQ(rep_search(a, 2, N, 1).total, expected);
    }
}

TEST(RepSearch, Guards) {
    EXPECT_THROW(rep_search({0}, 10, 9, 1), DomainError);
    EXPECT_THROW(rep_search({0}, 0, 10, 0), DomainError);
    EXPECT_THROW(rep_search({0}, 0, 1'000'000'000, 1), ResourceError);
    EXPECT_THROW(rep_search({1}, std::numeric_limits<std::int64_t>::min(),
                            std::numeric_limits<std::int64_t>::min() + 10, 1),
                 DomainError);
    const auto p = rep_search({0}, 0, 10, 1, SearchOptions{1, CountStorage::none});
    EXPECT_THROW(p.count_at(3), BoundsError);
    EXPECT_THROW(rep_search({0}, 0, 10, 1).count_at(11), BoundsError);
}

TEST(RepSearch, AutomaticStorageSwitchesAboveMillion) {
    SearchOptions opts;
    opts.storage = CountStorage::automatic;
    const auto small = rep_search({0}, 1, 1'000'000, 1, opts);
    EXPECT_EQ(small.storage, CountStorage::dense);
    const auto large = rep_search({0}, 1, 1'000'001, 1, opts);
    EXPECT_EQ(large.storage, CountStorage::sparse);
    EXPECT_EQ(large.sparse.size(), 78498U);
}

TEST(Romanoff, HandEnumeration) {
    const auto r = romanoff_count(9, 1);
    EXPECT_EQ(r.representable, 3U);
    EXPECT_EQ(r.odd_total, 4U);
    EXPECT_DOUBLE_EQ(r.density(), 0.75);
    EXPECT_DOUBLE_EQ(romanoff_density(9, 0), 1.0);  // 3 = 2 + 2^0
}

TEST(Romanoff, FrozenCountsAndStability) {
    // Python sieve enumeration: 46606/49999 at 10^5 and 460458/499999 at 10^6 (k >= 1).
    const auto a = romanoff_count(100'000, 1);
    const auto b = romanoff_count(1'000'000, 1, 3);
    EXPECT_EQ(a.representable, 46606U);
    EXPECT_EQ(a.odd_total, 49999U);
    EXPECT_EQ(b.representable, 460458U);
    EXPECT_EQ(b.odd_total, 499999U);
    EXPECT_LT(std::abs(a.density() - b.density()), 0.02);
    EXPECT_EQ(romanoff_count(100'000, 0).representable, 46607U);
}

TEST(Romanoff, BoundedAndMonotoneInKMin) {
    for (std::uint64_t limit : {3ULL, 9ULL, 10ULL, 1000ULL, 65'537ULL}) {
        const double d1 = romanoff_density(limit, 1);
        const double d0 = romanoff_density(limit, 0);
        EXPECT_GE(d1, 0.0);
        EXPECT_LE(d0, 1.0);
        EXPECT_GE(d0, d1);
        if (limit >= 9) {
            EXPECT_GT(d1, 0.0);
        }
    }
}

TEST(Romanoff, Guards) {
    EXPECT_THROW(romanoff_count(2, 1), DomainError);
    EXPECT_THROW(romanoff_count(100, 2), DomainError);
    EXPECT_THROW(romanoff_count(1'000'000'001, 1), ResourceError);
}

TEST(GenSequence, Examples) {
    auto vec = [](const IntegerSet& s) { return std::vector<std::int64_t>(s.begin(), s.end()); };
    EXPECT_EQ(vec(gen_sequence(SequenceKind::powers_of_two, 4)),
              (std::vector<std::int64_t>{2, 4, 8, 16}));
    EXPECT_EQ(vec(gen_sequence(SequenceKind::two_pow_prime, 3)),
              (std::vector<std::int64_t>{4, 8, 32}));
    EXPECT_EQ(vec(gen_sequence(SequenceKind::divisor_chain, 3, 3)),
              (std::vector<std::int64_t>{3, 9, 27}));
}

TEST(GenSequence, LimitsAndDivisibility) {
    EXPECT_EQ(gen_sequence(SequenceKind::powers_of_two, 62).max(), std::int64_t{1} << 62);
    EXPECT_THROW(gen_sequence(SequenceKind::powers_of_two, 63), DomainError);
    EXPECT_EQ(gen_sequence(SequenceKind::two_pow_prime, 18).max(), std::int64_t{1} << 61);
    EXPECT_THROW(gen_sequence(SequenceKind::two_pow_prime, 19), DomainError);
    EXPECT_THROW(gen_sequence(SequenceKind::divisor_chain, 40, 3), DomainError);
    EXPECT_THROW(gen_sequence(SequenceKind::divisor_chain, 3, 1), DomainError);
    EXPECT_THROW(gen_sequence(SequenceKind::powers_of_two, 0), DomainError);

    const auto chain = gen_sequence(SequenceKind::divisor_chain, 39, 3);
    const auto el = chain.elements();
    for (std::size_t i = 1; i < el.size(); ++i) EXPECT_EQ(el[i] % el[i - 1], 0);
}
