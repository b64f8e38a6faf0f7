#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "primeshift/error.hpp"

namespace primeshift {

/// Non-empty, strictly increasing list of distinct 64-bit integers a_1 < ... < a_l.
class IntegerSet {
public:
    /// Throws ValidationError unless `sorted` is non-empty and strictly increasing.
    static IntegerSet from_sorted(std::vector<std::int64_t> sorted) {
        if (sorted.empty()) throw ValidationError("integer set must be non-empty");
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            if (sorted[i - 1] >= sorted[i])
                throw ValidationError("integer set must be strictly increasing at index " +
                                      std::to_string(i));
        }
        return IntegerSet(std::move(sorted));
    }

    /// Sorts; duplicates are an error because the elements must be distinct.
    static IntegerSet from_unsorted(std::vector<std::int64_t> values) {
        if (values.empty()) throw ValidationError("integer set must be non-empty");
        std::sort(values.begin(), values.end());
        auto dup = std::adjacent_find(values.begin(), values.end());
        if (dup != values.end())
            throw ValidationError("duplicate value " + std::to_string(*dup));
        return IntegerSet(std::move(values));
    }

    IntegerSet(std::initializer_list<std::int64_t> values)
        : IntegerSet(from_unsorted(std::vector<std::int64_t>(values))) {}

    /// {first, first+1, ..., last}.
    static IntegerSet range(std::int64_t first, std::int64_t last) {
        if (last < first) throw ValidationError("empty range");
        std::vector<std::int64_t> v;
        v.reserve(static_cast<std::size_t>(last - first + 1));
        for (std::int64_t x = first; x <= last; ++x) v.push_back(x);
        return IntegerSet(std::move(v));
    }

    std::size_t size() const noexcept { return elements_.size(); }
    std::span<const std::int64_t> elements() const noexcept { return elements_; }
    std::int64_t min() const noexcept { return elements_.front(); }
    std::int64_t max() const noexcept { return elements_.back(); }

    auto begin() const noexcept { return elements_.begin(); }
    auto end() const noexcept { return elements_.end(); }

    bool contains(std::int64_t v) const {
        return std::binary_search(elements_.begin(), elements_.end(), v);
    }

    friend bool operator==(const IntegerSet&, const IntegerSet&) = default;

private:
    explicit IntegerSet(std::vector<std::int64_t> v) : elements_(std::move(v)) {}

    std::vector<std::int64_t> elements_;
};

/// Mathematical residue in [0, m).
inline std::uint64_t residue(std::int64_t a, std::uint64_t m) {
    const auto sm = static_cast<__int128>(m);
    __int128 r = static_cast<__int128>(a) % sm;
    if (r < 0) r += sm;
    return static_cast<std::uint64_t>(r);
}

}  // namespace primeshift
