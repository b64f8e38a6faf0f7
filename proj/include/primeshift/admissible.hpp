#pragma once

// Admissibility of a finite integer set: for every prime p the set misses at
// least one residue class mod p. Only primes p <= |set| need checking, since
// fewer than p elements can never cover all p classes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primeshift/error.hpp"
#include "primeshift/integer_set.hpp"
#include "primeshift/primes.hpp"

namespace primeshift {

enum class Verdict { admissible, inadmissible };

inline const char* to_string(Verdict v) {
    return v == Verdict::admissible ? "admissible" : "inadmissible";
}

struct MissedResidue {
    std::uint64_t prime;
    std::uint64_t residue;  // smallest residue not hit
};

struct AdmissibilityCertificate {
    Verdict verdict = Verdict::admissible;
    /// One entry per prime p <= |set| when admissible (empty for |set| < 2).
    std::vector<MissedResidue> missed;
    /// Smallest prime whose residues are all hit; set iff inadmissible.
    std::optional<std::uint64_t> covering_prime;

    bool admissible() const noexcept { return verdict == Verdict::admissible; }
};

namespace detail {

// Smallest residue mod p not hit by the set, or nullopt if all are hit.
inline std::optional<std::uint64_t> smallest_missed_residue(const IntegerSet& set,
                                                            std::uint64_t p) {
    std::vector<std::uint8_t> hit(p, 0);
    std::uint64_t distinct = 0;
    for (std::int64_t a : set) {
        auto& h = hit[residue(a, p)];
        if (!h) {
            h = 1;
            if (++distinct == p) return std::nullopt;
        }
    }
    for (std::uint64_t r = 0; r < p; ++r)
        if (!hit[r]) return r;
    return std::nullopt;
}

}  // namespace detail

inline AdmissibilityCertificate check_admissible(const IntegerSet& set) {
    AdmissibilityCertificate cert;
    if (set.size() < 2) return cert;
    for (std::uint64_t p : detail::small_primes(set.size())) {
        if (auto r = detail::smallest_missed_residue(set, p)) {
            cert.missed.push_back({p, *r});
        } else {
            cert.verdict = Verdict::inadmissible;
            cert.missed.clear();
            cert.covering_prime = p;
            return cert;
        }
    }
    return cert;
}

/// Direct-definition oracle: true iff no prime p <= prime_bound has every
/// residue class hit. Test use only.
inline bool brute_force_admissible(const IntegerSet& set, std::uint64_t prime_bound) {
    if (prime_bound < set.size())
        throw DomainError("brute_force_admissible: prime_bound " + std::to_string(prime_bound) +
                          " is below set size " + std::to_string(set.size()));
    for (std::uint64_t p = 2; p <= prime_bound; ++p) {
        bool prime = true;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (!prime) continue;
        std::vector<bool> hit(p, false);
        for (std::int64_t a : set) hit[residue(a, p)] = true;
        bool all = true;
        for (std::uint64_t r = 0; r < p; ++r) all = all && hit[r];
        if (all) return false;
    }
    return true;
}

/// Re-checks a certificate against the set it was issued for.
inline bool certificate_holds(const IntegerSet& set, const AdmissibilityCertificate& cert) {
    if (cert.admissible()) {
        if (cert.covering_prime) return false;
        const auto expected = set.size() < 2 ? std::vector<std::uint64_t>{}
                                             : detail::small_primes(set.size());
        if (cert.missed.size() != expected.size()) return false;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            const auto& w = cert.missed[i];
            if (w.prime != expected[i] || w.residue >= w.prime) return false;
            for (std::int64_t a : set)
                if (residue(a, w.prime) == w.residue) return false;
        }
        return true;
    }
    if (!cert.covering_prime) return false;
    const std::uint64_t p = *cert.covering_prime;
    std::vector<bool> hit(p, false);
    for (std::int64_t a : set) hit[residue(a, p)] = true;
    for (std::uint64_t r = 0; r < p; ++r)
        if (!hit[r]) return false;
    return true;
}

}  // namespace primeshift
