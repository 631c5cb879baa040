#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "trek/algebra.hpp"
#include "trek/errors.hpp"
#include "trek/sparse_poly.hpp"

namespace trek {

inline const std::vector<std::string>& xy_vars() {
    static const std::vector<std::string> v{"x", "lambda"};
    return v;
}

namespace detail {

inline SparsePoly shift_var(const SparsePoly& p, std::size_t var) {
    SparsePoly out(p.vars());
    for (const auto& [e, c] : p.terms()) {
        Exponents f = e;
        f[var] += 1;
        out.add_term(f, c);
    }
    return out;
}

} // namespace detail

/// Central binomial coefficient C(2n, n), computed by the exact ratio
/// recurrence C_{n+1} = C_n * 2(2n+1)/(n+1).
inline BigInt central_binomial(std::size_t n) {
    BigInt c = 1;
    for (std::size_t k = 0; k < n; ++k) {
        c *= 2 * BigInt(2 * k + 1);
        c = exact_divide(c, BigInt(k + 1));
    }
    return c;
}

/// The universal polynomial sequence u~_n(x, lambda) in Z[x, lambda]:
///
///   u~_0 = 1,  u~_1 = -2*lambda,
///   u~_{n+1} = ((4n+2)/(n+1)) (n(n+1) - lambda) u~_n + ((4n)/(n+1)) x u~_{n-1}.
///
/// Each step is formed over Z and then divided exactly by (n+1); the division
/// doubles as a runtime assertion that the sequence really stays integral.
/// Entries are cached; extension is single-writer, reads of the computed
/// prefix are safe to share.
class UtildeSeq {
public:
    UtildeSeq() { entries_.push_back(SparsePoly::constant(xy_vars(), 1)); }

    explicit UtildeSeq(std::size_t n_max) : UtildeSeq() { extend(n_max); }

    std::size_t max_index() const { return entries_.size() - 1; }

    void extend(std::size_t n_max) {
        while (max_index() < n_max) step();
    }

    const SparsePoly& at(std::size_t n) {
        extend(n);
        return entries_[n];
    }

    const SparsePoly& at_computed(std::size_t n) const {
        if (n >= entries_.size()) throw InvalidInput("UtildeSeq entry not computed");
        return entries_[n];
    }

private:
    void step() {
        const std::size_t n = entries_.size() - 1; // computing entry n+1
        const SparsePoly& un = entries_[n];
        // (4n+2) * (n(n+1) - lambda) * u_n  +  4n * x * u_{n-1}, over Z
        SparsePoly t = un * (BigInt(4 * n + 2) * BigInt(n) * BigInt(n + 1));
        t -= detail::shift_var(un, 1) * BigInt(4 * n + 2);
        if (n >= 1) t += detail::shift_var(entries_[n - 1], 0) * BigInt(4 * n);
        try {
            entries_.push_back(exact_div_int(t, BigInt(n + 1)));
        } catch (const NotDivisible& ex) {
            std::ostringstream os;
            os << "integrality violated at index " << n + 1 << ": " << ex.what();
            throw NotDivisible(os.str());
        }
    }

    std::vector<SparsePoly> entries_;
};

/// One-shot convenience; prefer a shared UtildeSeq for sweeps.
inline SparsePoly u_tilde(std::size_t n) {
    UtildeSeq seq(n);
    return seq.at(n);
}

/// v_0..v_{n_max} at a rational point, where v_n = u~_n / C(2n,n):
/// v_{n+1} = (n(n+1) - lambda) v_n + (n^2 / ((2n-1)(2n+1))) x v_{n-1}.
inline std::vector<Rational> v_eval(const Rational& x, const Rational& lambda,
                                    std::size_t n_max) {
    std::vector<Rational> v;
    v.reserve(n_max + 1);
    v.push_back(1);
    if (n_max >= 1) v.push_back(-lambda);
    for (std::size_t n = 1; n < n_max; ++n) {
        Rational next = (Rational(BigInt(n) * BigInt(n + 1)) - lambda) * v[n];
        next += Rational(BigInt(n) * BigInt(n), BigInt(2 * n - 1) * BigInt(2 * n + 1)) * x * v[n - 1];
        v.push_back(next);
    }
    return v;
}

/// u^_0..u^_{n_max} at a rational point (a2, lambda), streaming the original
/// recurrence with exact rationals; agrees with evaluating u~_n at x = a2.
inline std::vector<Rational> u_hat_eval(const Rational& a2, const Rational& lambda,
                                        std::size_t n_max) {
    std::vector<Rational> u;
    u.reserve(n_max + 1);
    u.push_back(1);
    if (n_max >= 1) u.push_back(-2 * lambda);
    for (std::size_t n = 1; n < n_max; ++n) {
        Rational next = Rational(BigInt(4 * n + 2), BigInt(n + 1)) *
                        (Rational(BigInt(n) * BigInt(n + 1)) - lambda) * u[n];
        next += Rational(BigInt(4 * n), BigInt(n + 1)) * a2 * u[n - 1];
        u.push_back(next);
    }
    return u;
}

struct BoundsViolation {
    std::size_t n = 0;
    std::uint32_t r = 0;
    std::uint32_t s = 0;
    std::string kind;
};

struct BoundsReport {
    std::size_t n_max = 0;
    std::vector<BoundsViolation> violations;
    bool pass() const { return violations.empty(); }
};

/// Support bounds for one entry: every monomial x^r lambda^s of u~_n must
/// satisfy 2r + s <= n, r <= floor(n/2), s <= n.
inline std::vector<BoundsViolation> check_bounds_entry(const SparsePoly& p, std::size_t n) {
    std::vector<BoundsViolation> bad;
    for (const auto& [e, c] : p.terms()) {
        const std::uint32_t r = e[0], s = e[1];
        if (2ull * r + s > n) bad.push_back({n, r, s, "weighted degree 2r+s > n"});
        if (r > n / 2) bad.push_back({n, r, s, "x-degree > floor(n/2)"});
        if (s > n) bad.push_back({n, r, s, "lambda-degree > n"});
    }
    return bad;
}

/// Sweep the cached sequence; failures are reported with witnesses, never
/// thrown.
inline BoundsReport check_bounds(UtildeSeq& seq, std::size_t n_max) {
    BoundsReport rep;
    rep.n_max = n_max;
    for (std::size_t n = 0; n <= n_max; ++n) {
        auto bad = check_bounds_entry(seq.at(n), n);
        rep.violations.insert(rep.violations.end(), bad.begin(), bad.end());
    }
    return rep;
}

} // namespace trek
