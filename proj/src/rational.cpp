#include "dvrp/rational.hpp"

#include <cctype>
#include <limits>

namespace dvrp {

namespace {

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rat Rat::make(i128 num, i128 den) {
    if (den == 0) throw ContractError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    u128 a = num < 0 ? u128(-num) : u128(num);
    u128 g = gcd128(a, u128(den));
    if (g > 1) {
        num /= i128(g);
        den /= i128(g);
    }
    constexpr i128 lo = std::numeric_limits<long long>::min();
    constexpr i128 hi = std::numeric_limits<long long>::max();
    if (num < lo || num > hi || den > hi) throw OverflowError("rational out of 64-bit range");
    Rat r;
    r.num_ = static_cast<long long>(num);
    r.den_ = static_cast<long long>(den);
    return r;
}

Rat Rat::parse(const std::string& text) {
    const char* s = text.c_str();
    auto read_int = [&](const char*& p) -> long long {
        bool neg = false;
        if (*p == '-') {
            neg = true;
            ++p;
        }
        if (!std::isdigit(static_cast<unsigned char>(*p)))
            throw ContractError("invalid rational '" + text + "'");
        i128 v = 0;
        while (std::isdigit(static_cast<unsigned char>(*p))) {
            v = v * 10 + (*p - '0');
            if (v > std::numeric_limits<long long>::max())
                throw OverflowError("rational literal too large: '" + text + "'");
            ++p;
        }
        return neg ? -static_cast<long long>(v) : static_cast<long long>(v);
    };
    const char* p = s;
    long long num = read_int(p);
    long long den = 1;
    if (*p == '/') {
        ++p;
        den = read_int(p);
    }
    if (*p != '\0') throw ContractError("invalid rational '" + text + "'");
    if (den == 0) throw ContractError("invalid rational '" + text + "': zero denominator");
    return Rat(num, den);
}

std::string Rat::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rat::decimal(int digits) const {
    if (digits < 0) throw ContractError("negative digit count");
    i128 num = num_;
    std::string out;
    if (num < 0) {
        out += '-';
        num = -num;
    }
    i128 whole = num / den_;
    i128 rem = num % den_;
    out += std::to_string(static_cast<long long>(whole));
    if (digits == 0) return out;
    out += '.';
    for (int i = 0; i < digits; ++i) {
        rem *= 10;
        out += static_cast<char>('0' + static_cast<int>(rem / den_));
        rem %= den_;
    }
    return out;
}

}  // namespace dvrp
