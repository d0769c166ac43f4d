#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>

#include "dvrp/error.hpp"

namespace dvrp {

// Exact rational with 64-bit numerator and denominator, always normalized
// (denominator > 0, gcd 1). Intermediates run in 128-bit arithmetic; a result
// that does not reduce back into 64 bits raises OverflowError.
class Rat {
  public:
    Rat() = default;
    Rat(long long value) : num_(value) {}  // implicit: integers are rationals
    Rat(long long num, long long den) { *this = make(num, den); }

    // Accepts "a" or "a/b" with optional leading '-'. Anything else throws.
    static Rat parse(const std::string& text);

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    Rat operator-() const {
        Rat r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw ContractError("rational division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    // "7" or "3/2".
    std::string str() const;

    // Decimal expansion truncated to `digits` places after the point.
    std::string decimal(int digits) const;

  private:
    using i128 = __int128;
    static Rat make(i128 num, i128 den);

    long long num_ = 0;
    long long den_ = 1;
};

}  // namespace dvrp

template <>
struct std::hash<dvrp::Rat> {
    std::size_t operator()(const dvrp::Rat& r) const {
        std::size_t h = std::hash<long long>()(r.num());
        return h * 1000003u ^ std::hash<long long>()(r.den());
    }
};
