#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "trek/algebra.hpp"
#include "trek/constants.hpp"
#include "trek/errors.hpp"
#include "trek/recurrence.hpp"
#include "trek/sparse_poly.hpp"

namespace trek {

/// Coefficient-ring elements live in Z[P, C, L] with P standing for pi^2.
/// Only P ever carries pi-dependence, so odd powers of pi cannot occur by
/// construction.
inline const std::vector<std::string>& pcl_vars() {
    static const std::vector<std::string> v{"pi2", "C", "L"};
    return v;
}

/// The symbolic Taylor coefficient c_n as an element of Z[P, C, L]:
/// each term a * x^r * lambda^s of u~_n contributes
///   a * (-1)^s * 2^(2n-4r-s) * P^r * C^(2n-2r-s) * L^s.
/// The map is applied term-by-term (never via rational substitution), so the
/// exponent inequalities 2n-4r-s >= 0 and 2n-2r-s >= n act as independent
/// runtime assertions of the weighted support bound.
inline SparsePoly c_n_symbolic(std::size_t n, UtildeSeq& seq) {
    const SparsePoly& un = seq.at(n);
    SparsePoly out(pcl_vars());
    for (const auto& [e, a] : un.terms()) {
        const std::uint64_t r = e[0], s = e[1];
        const std::int64_t two_exp = 2 * static_cast<std::int64_t>(n) -
                                     4 * static_cast<std::int64_t>(r) -
                                     static_cast<std::int64_t>(s);
        const std::int64_t c_exp = 2 * static_cast<std::int64_t>(n) -
                                   2 * static_cast<std::int64_t>(r) -
                                   static_cast<std::int64_t>(s);
        if (two_exp < 0 || c_exp < static_cast<std::int64_t>(n)) {
            std::ostringstream os;
            os << "exponent bound violated for x^" << r << " lambda^" << s
               << " in u~_" << n;
            throw ExponentViolation(os.str());
        }
        BigInt coeff = a * int_pow(2, static_cast<std::size_t>(two_exp));
        if (s % 2 == 1) coeff = -coeff;
        out.add_term(Exponents(static_cast<std::uint32_t>(r),
                               static_cast<std::uint32_t>(c_exp),
                               static_cast<std::uint32_t>(s)),
                     std::move(coeff));
    }
    return out;
}

struct DivisibilityReport {
    bool pass = true;
    std::string witness;
};

/// Every monomial of c_n must carry C-exponent >= n.
inline DivisibilityReport check_divisibility(const SparsePoly& h, std::size_t n) {
    DivisibilityReport rep;
    if (h.vars() != pcl_vars()) throw ArityMismatch("expected a Z[pi2,C,L] element");
    for (const auto& [e, c] : h.terms()) {
        if (e[1] < n) {
            rep.pass = false;
            std::ostringstream os;
            os << "monomial pi2^" << e[0] << " C^" << e[1] << " L^" << e[2]
               << " has C-exponent " << e[1] << " < " << n;
            rep.witness = os.str();
            return rep;
        }
    }
    return rep;
}

/// Independent route: at a rational triple (P, C != 0, L), compare
/// c_n(P, C, L) with (2C)^(2n) * u~_n(P/(16 C^2), -L/(2C)). Exact equality.
inline bool cross_check_substitution(std::size_t n, const Rational& P, const Rational& C,
                                     const Rational& L, UtildeSeq& seq,
                                     std::string* witness = nullptr) {
    if (C == 0) throw InvalidInput("cross check needs C != 0");
    const Rational lhs = c_n_symbolic(n, seq).eval({P, C, L});
    const Rational x_star = P / (16 * C * C);
    const Rational lambda_star = -L / (2 * C);
    const Rational rhs = rat_pow(2 * C, 2 * n) * seq.at(n).eval({x_star, lambda_star});
    if (lhs == rhs) return true;
    if (witness) {
        std::ostringstream os;
        os << "c_" << n << "(" << rat_str(P) << "," << rat_str(C) << "," << rat_str(L)
           << ") = " << rat_str(lhs) << " != substitution route " << rat_str(rhs);
        *witness = os.str();
    }
    return false;
}

/// User-supplied evaluation constants. The tool never derives these; they
/// are echoed back into any output that uses them.
struct EvalConstants {
    Rational C_value;
    Rational L_value;
    unsigned pi_bits = 128;
    std::optional<Rational> pi2_override; // exact P, used instead of the enclosure
};

struct NumericValue {
    Rational value;       // c_n at (P_mid, C, L)
    Rational error_bound; // rigorous bound for the pi^2 enclosure width
};

/// Evaluate c_n at the supplied constants. C and L are exact rational
/// inputs; pi^2 enters as a rational enclosure of width 2^-pi_bits (or the
/// caller's exact override), and the reported error bound covers the
/// enclosure via a term-wise mean-value estimate.
inline NumericValue c_n_numeric(std::size_t n, const EvalConstants& consts, UtildeSeq& seq) {
    if (consts.C_value == 0) throw InvalidConstants("C must be nonzero");
    const SparsePoly h = c_n_symbolic(n, seq);

    Rational p_mid, p_max, halfwidth;
    if (consts.pi2_override) {
        p_mid = *consts.pi2_override;
        p_max = boost::multiprecision::abs(p_mid);
        halfwidth = 0;
    } else {
        const RationalInterval p = pi_squared_interval(consts.pi_bits);
        p_mid = p.mid();
        p_max = p.hi;
        halfwidth = p.width() / 2;
    }

    // collect c_n as a univariate polynomial in P with exact coefficients
    std::uint32_t max_r = 0;
    for (const auto& [e, c] : h.terms()) max_r = std::max(max_r, e[0]);
    std::vector<Rational> coeff_p(max_r + 1, Rational(0));
    for (const auto& [e, c] : h.terms())
        coeff_p[e[0]] += Rational(c) * rat_pow(consts.C_value, e[1]) *
                         rat_pow(consts.L_value, e[2]);

    NumericValue out;
    out.value = 0;
    out.error_bound = 0;
    for (std::uint32_t r = 0; r <= max_r; ++r) {
        out.value += coeff_p[r] * rat_pow(p_mid, r);
        if (r >= 1 && halfwidth != 0)
            out.error_bound += boost::multiprecision::abs(coeff_p[r]) * r *
                               rat_pow(p_max, r - 1) * halfwidth;
    }
    return out;
}

} // namespace trek
