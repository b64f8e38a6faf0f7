#pragma once

// Closed double intervals with outward rounding. Each operation widens the
// rounded result by one ulp on each side, which encloses the exact value for
// IEEE-754 +,-,*,/ (correctly rounded). std::log is widened by two ulps; glibc
// documents its log as accurate to within one ulp.

#include <cmath>
#include <limits>
#include <stdexcept>

namespace primeshift {

class Interval {
public:
    constexpr Interval() = default;
    constexpr explicit Interval(double v) : lo_(v), hi_(v) {}
    constexpr Interval(double lo, double hi) : lo_(lo), hi_(hi) {}

    /// Encloses a decimal constant such as 0.923 that has no exact double.
    static Interval enclosing(double nearest) {
        return {down(nearest), up(nearest)};
    }

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double mid() const noexcept { return 0.5 * (lo_ + hi_); }

    friend Interval operator+(Interval a, Interval b) {
        return {down(a.lo_ + b.lo_), up(a.hi_ + b.hi_)};
    }
    friend Interval operator-(Interval a, Interval b) {
        return {down(a.lo_ - b.hi_), up(a.hi_ - b.lo_)};
    }
    /// Both operands must be non-negative.
    friend Interval operator*(Interval a, Interval b) {
        return {down(a.lo_ * b.lo_), up(a.hi_ * b.hi_)};
    }
    /// Both operands must be positive.
    friend Interval operator/(Interval a, Interval b) {
        return {down(a.lo_ / b.hi_), up(a.hi_ / b.lo_)};
    }

    Interval& operator*=(Interval b) { return *this = *this * b; }

    /// Natural log; argument must be positive.
    friend Interval log(Interval a) {
        return {down(down(std::log(a.lo_))), up(up(std::log(a.hi_)))};
    }

private:
    static double down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
    static double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }

    double lo_ = 0.0;
    double hi_ = 0.0;
};

}  // namespace primeshift
