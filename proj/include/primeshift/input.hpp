#pragma once

// Integer-set input files: one integer per line, '#' comment lines and blank
// lines ignored, LF or CRLF line endings. Values are sorted on load;
// duplicates are rejected.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "primeshift/error.hpp"
#include "primeshift/integer_set.hpp"

namespace primeshift {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n\v\f";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

}  // namespace detail

inline IntegerSet parse_input_set(std::istream& in) {
    std::vector<std::int64_t> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view tok = detail::trim(line);
        if (tok.empty() || tok.front() == '#') continue;
        if (tok.front() == '+') tok.remove_prefix(1);
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec == std::errc::result_out_of_range)
            throw ParseError(line_no, "integer out of 64-bit range: '" + std::string(tok) + "'");
        if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
            throw ParseError(line_no, "not an integer: '" + std::string(tok) + "'");
        values.push_back(v);
    }
    if (values.empty()) throw ValidationError("input contains no integers");
    return IntegerSet::from_unsorted(std::move(values));
}

/// Reads from `path`, or from standard input when path is "-".
inline IntegerSet parse_input_set(const std::string& path) {
    if (path == "-") return parse_input_set(std::cin);
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file '" + path + "'");
    return parse_input_set(in);
}

}  // namespace primeshift
