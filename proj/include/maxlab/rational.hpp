#pragma once

#include <boost/rational.hpp>
#include <cstdint>

namespace maxlab {

// Exact coordinates for cube geometry. Denominators stay tiny
// (at most 3 * 2^L), so int64 never comes close to overflow.
using Rational = boost::rational<std::int64_t>;

inline std::int64_t rational_floor(const Rational& r) {
    std::int64_t n = r.numerator(), d = r.denominator();  // d > 0
    std::int64_t q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

inline std::int64_t rational_ceil(const Rational& r) {
    return -rational_floor(-r);
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// 2^k as a rational, k may be negative.
inline Rational pow2_rational(int k) {
    if (k >= 0) return Rational(std::int64_t(1) << k, 1);
    return Rational(1, std::int64_t(1) << (-k));
}

}  // namespace maxlab
