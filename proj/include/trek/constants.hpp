#pragma once

#include <cstddef>

#include "trek/algebra.hpp"
#include "trek/errors.hpp"

namespace trek {

/// Closed rational interval known to contain an irrational constant.
struct RationalInterval {
    Rational lo;
    Rational hi;
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

namespace detail {

/// Enclosure of arctan(1/x) for integer x >= 2 from the alternating series
/// sum (-1)^k / ((2k+1) x^(2k+1)); the sum always lies between consecutive
/// partial sums.
inline RationalInterval atan_inv_interval(unsigned x, unsigned bits) {
    const Rational eps(1, BigInt(1) << (bits + 4));
    Rational sum = 0;
    Rational prev = 0;
    const BigInt x2 = BigInt(x) * BigInt(x);
    BigInt xp = x; // x^(2k+1)
    for (std::size_t k = 0;; ++k) {
        const Rational term(1, BigInt(2 * k + 1) * xp);
        prev = sum;
        if (k % 2 == 0)
            sum += term;
        else
            sum -= term;
        if (term < eps && k > 0) break;
        xp *= x2;
    }
    if (sum < prev) return {sum, prev};
    return {prev, sum};
}

} // namespace detail

/// Rational enclosure of pi via Machin's formula
///   pi = 16 arctan(1/5) - 4 arctan(1/239),
/// with width below 2^-bits. Entirely exact arithmetic.
inline RationalInterval pi_interval(unsigned bits) {
    const unsigned work = bits + 10;
    const RationalInterval a5 = detail::atan_inv_interval(5, work);
    const RationalInterval a239 = detail::atan_inv_interval(239, work);
    RationalInterval pi{16 * a5.lo - 4 * a239.hi, 16 * a5.hi - 4 * a239.lo};
    if (pi.width() > Rational(1, BigInt(1) << bits))
        throw InvalidInput("pi enclosure failed to reach requested width");
    return pi;
}

/// Rational enclosure of pi^2 with width below 2^-bits.
inline RationalInterval pi_squared_interval(unsigned bits) {
    const RationalInterval pi = pi_interval(bits + 4);
    RationalInterval sq{pi.lo * pi.lo, pi.hi * pi.hi};
    if (sq.width() > Rational(1, BigInt(1) << bits))
        throw InvalidInput("pi^2 enclosure failed to reach requested width");
    return sq;
}

} // namespace trek
