#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace prymab {

// All arithmetic in this library is exact: arbitrary-precision integers and
// rationals, never floating point.  cpp_rational keeps values in lowest terms
// with a positive denominator, which is exactly the normal form we need.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Floor division for arbitrary integers, denominator > 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && (a < 0) != (b < 0)) --q;
    return q;
}

/// Floor of a rational.
inline Int rat_floor(const Rat& q) {
    return floor_div(numerator(q), denominator(q));
}

/// Fractional part <q> = q - floor(q), always in [0, 1).
inline Rat frac_part(const Rat& q) {
    return q - Rat(rat_floor(q));
}

} // namespace prymab
