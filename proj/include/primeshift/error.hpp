#pragma once

// Exception types shared by every module. The CLI maps all of them to exit
// status 2; verification failures are reported as data, never thrown.

#include <stdexcept>
#include <string>

namespace primeshift {

/// Argument outside an operation's accepted range (e.g. sieve limit > 2^40).
class BoundsError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Mathematically invalid argument (nth_prime(0), corollary_bound(x < e), overflow).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Request would exceed the desk-scale resource guards.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Input parsed but violates a domain invariant (duplicates, empty set).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace primeshift
