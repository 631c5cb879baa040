#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "trek/errors.hpp"

namespace trek {

// Exact arbitrary-precision integers and rationals. cpp_rational keeps the
// fraction reduced with a positive denominator after every operation, which
// is exactly the canonical form the identity tests compare.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Evaluation point for multivariate polynomials.
using RatPoint = std::vector<Rational>;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

/// n/d for arbitrary integer pairs: the sign moves to the numerator (the
/// underlying constructor insists on a positive denominator).
inline Rational make_rational(BigInt n, BigInt d) {
    if (d == 0) throw InvalidInput("zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rational(std::move(n), std::move(d));
}

inline int sign_of(const Rational& r) { return r.sign(); }
inline int sign_of(const BigInt& z) { return z.sign(); }

/// Exact integer quotient; throws ExactDivisionFailure on a nonzero remainder.
inline BigInt exact_divide(const BigInt& a, const BigInt& b) {
    if (b == 0) throw ExactDivisionFailure("integer division by zero");
    BigInt q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0) throw ExactDivisionFailure("non-exact integer division");
    return q;
}

inline Rational exact_divide(const Rational& a, const Rational& b) {
    if (b == 0) throw ExactDivisionFailure("rational division by zero");
    return a / b;
}

inline BigInt int_pow(BigInt base, std::size_t e) {
    BigInt r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rational rat_pow(const Rational& base, std::size_t e) {
    Rational r = 1;
    Rational b = base;
    std::size_t k = e;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

inline BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r *= BigInt(n - k + i);
        r /= BigInt(i); // exact: r is a running binomial coefficient
    }
    return r;
}

/// Round x to the nearest multiple of 2^-bits, ties to even.
/// Never invoked implicitly by any arithmetic; callers opt in (the spectral
/// solver uses it to bound bit growth of its iterates).
inline Rational dyadic_round(const Rational& x, unsigned bits) {
    BigInt n = num(x) << bits;
    const BigInt d = den(x); // > 0
    BigInt q, r;
    boost::multiprecision::divide_qr(n, d, q, r);
    if (r < 0) { // floor division
        q -= 1;
        r += d;
    }
    const BigInt twice = r << 1;
    if (twice > d || (twice == d && q % 2 != 0)) q += 1;
    return Rational(q, BigInt(1) << bits);
}

/// Canonical wire format: "<num>/<den>" with den >= 1, always reduced.
inline std::string rat_str(const Rational& r) {
    return num(r).str() + "/" + den(r).str();
}

/// Decimal expansion with the fractional part truncated after `digits`
/// digits. Used for human-readable echoes next to the exact "p/q" form.
inline std::string to_decimal_string(const Rational& x, std::size_t digits) {
    BigInt n = num(x);
    const BigInt d = den(x);
    std::string out;
    if (n < 0) {
        out += '-';
        n = -n;
    }
    BigInt ip, rem;
    boost::multiprecision::divide_qr(n, d, ip, rem);
    out += ip.str();
    if (digits == 0) return out;
    out += '.';
    for (std::size_t i = 0; i < digits; ++i) {
        rem *= 10;
        BigInt dig;
        boost::multiprecision::divide_qr(rem, d, dig, rem);
        out += static_cast<char>('0' + dig.convert_to<int>());
    }
    return out;
}

/// log2 |x| as a double, -inf for zero. Diagnostics only.
inline double log2_abs(const BigInt& x) {
    if (x == 0) return -std::numeric_limits<double>::infinity();
    BigInt a = boost::multiprecision::abs(x);
    const std::size_t bits = boost::multiprecision::msb(a) + 1;
    int shift = 0;
    if (bits > 53) {
        shift = static_cast<int>(bits - 53);
        a >>= shift;
    }
    return std::log2(a.convert_to<double>()) + shift;
}

inline double log2_abs(const Rational& x) {
    if (x == 0) return -std::numeric_limits<double>::infinity();
    return log2_abs(num(x)) - log2_abs(den(x));
}

namespace detail {

inline bool is_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline BigInt parse_bigint(std::string s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    if (!is_digits(s)) throw InvalidInput("not an integer: '" + s + "'");
    BigInt v(s);
    return neg ? -v : v;
}

} // namespace detail

/// Parse a rational from one of: "p/q", an integer, a decimal such as
/// "-0.25" or "1e-6", or a power "2^-64".
inline Rational parse_rational(std::string s) {
    // trim
    const auto notspace = [](char c) { return c != ' ' && c != '\t'; };
    while (!s.empty() && !notspace(s.front())) s.erase(s.begin());
    while (!s.empty() && !notspace(s.back())) s.pop_back();
    if (s.empty()) throw InvalidInput("empty rational literal");

    if (auto pos = s.find('/'); pos != std::string::npos) {
        const BigInt p = detail::parse_bigint(s.substr(0, pos));
        const BigInt q = detail::parse_bigint(s.substr(pos + 1));
        if (q == 0) throw InvalidInput("zero denominator in '" + s + "'");
        return make_rational(p, q);
    }
    if (auto pos = s.find('^'); pos != std::string::npos) {
        const BigInt b = detail::parse_bigint(s.substr(0, pos));
        const BigInt e = detail::parse_bigint(s.substr(pos + 1));
        if (b == 0 && e <= 0) throw InvalidInput("0^nonpositive in '" + s + "'");
        const std::size_t a = boost::multiprecision::abs(e).convert_to<std::size_t>();
        const BigInt p = int_pow(b, a);
        if (p == 0) throw InvalidInput("zero base with negative exponent");
        return e < 0 ? Rational(1, p) : Rational(p);
    }
    // decimal / scientific
    std::string t = s;
    long exp10 = 0;
    if (auto pos = t.find_first_of("eE"); pos != std::string::npos) {
        exp10 = detail::parse_bigint(t.substr(pos + 1)).convert_to<long>();
        t = t.substr(0, pos);
    }
    std::string frac;
    if (auto pos = t.find('.'); pos != std::string::npos) {
        frac = t.substr(pos + 1);
        t = t.substr(0, pos);
        if (!frac.empty() && !detail::is_digits(frac))
            throw InvalidInput("bad decimal '" + s + "'");
    }
    bool neg = false;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
        neg = t[0] == '-';
        t.erase(0, 1);
    }
    if (t.empty() && frac.empty()) throw InvalidInput("bad rational '" + s + "'");
    if (!t.empty() && !detail::is_digits(t)) throw InvalidInput("bad rational '" + s + "'");
    BigInt mant = t.empty() ? BigInt(0) : BigInt(t);
    for (char c : frac) {
        mant *= 10;
        mant += c - '0';
    }
    if (neg) mant = -mant;
    const long shift = exp10 - static_cast<long>(frac.size());
    Rational v(mant);
    if (shift > 0)
        v *= Rational(int_pow(10, static_cast<std::size_t>(shift)));
    else if (shift < 0)
        v /= Rational(int_pow(10, static_cast<std::size_t>(-shift)));
    return v;
}

} // namespace trek
