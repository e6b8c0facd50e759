#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "wkc/errors.hpp"

namespace wkc {

// Nonnegative extended real: a finite penalty or +infinity. Addition saturates
// at +infinity; comparisons are exact (no epsilon). Integer-valued weights are
// exact up to 2^53.
class Weight {
public:
    constexpr Weight() : value_(0.0) {}

    static Weight finite(double v) {
        if (std::isnan(v) || v < 0.0 || std::isinf(v))
            throw DomainError("weight must be a nonnegative finite number");
        return Weight(v);
    }

    static constexpr Weight zero() { return Weight(0.0); }
    static constexpr Weight infinity() {
        return Weight(std::numeric_limits<double>::infinity());
    }

    bool is_infinite() const { return std::isinf(value_); }
    bool is_zero() const { return value_ == 0.0; }
    double value() const { return value_; }

    Weight& operator+=(Weight other) {
        value_ += other.value_;  // inf absorbs
        return *this;
    }
    friend Weight operator+(Weight a, Weight b) { return a += b; }

    friend bool operator==(Weight a, Weight b) { return a.value_ == b.value_; }
    friend bool operator!=(Weight a, Weight b) { return a.value_ != b.value_; }
    friend bool operator<(Weight a, Weight b) { return a.value_ < b.value_; }
    friend bool operator<=(Weight a, Weight b) { return a.value_ <= b.value_; }
    friend bool operator>(Weight a, Weight b) { return a.value_ > b.value_; }
    friend bool operator>=(Weight a, Weight b) { return a.value_ >= b.value_; }

    std::string str() const;

    // Accepts "inf" or a nonnegative decimal.
    static Weight parse(const std::string& text);

private:
    explicit constexpr Weight(double v) : value_(v) {}
    double value_;
};

} // namespace wkc
