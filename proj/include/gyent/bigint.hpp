#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

namespace gyent {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

/// Natural log of a positive integer, accurate for values far beyond double range.
inline double log_of(const BigInt& v) {
    if (v <= 0)
        return -HUGE_VAL;
    const auto bits = static_cast<long>(boost::multiprecision::msb(v));
    if (bits < 1000)
        return std::log(v.convert_to<long double>());
    const long drop = bits - 64;
    const BigInt top = v >> drop;
    return static_cast<double>(std::log(top.convert_to<long double>()) +
                               static_cast<long double>(drop) * std::log(2.0L));
}

inline BigInt ipow(BigInt base, unsigned exp) {
    BigInt r = 1;
    while (exp) {
        if (exp & 1U)
            r *= base;
        base *= base;
        exp >>= 1U;
    }
    return r;
}

inline BigInt binomial(const BigInt& top, unsigned k) {
    if (top < k)
        return 0;
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i)
        r = r * (top - i) / (i + 1);
    return r;
}

} // namespace gyent
