#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trek/algebra.hpp"
#include "trek/errors.hpp"
#include "trek/matrix.hpp"
#include "trek/recurrence.hpp"
#include "trek/sparse_poly.hpp"

namespace trek {

inline const std::vector<std::string>& t_vars() {
    static const std::vector<std::string> v{"t"};
    return v;
}

inline const std::vector<std::string>& beta_lambda_vars() {
    static const std::vector<std::string> v{"beta", "lambda"};
    return v;
}

/// Scaled Legendre polynomial Q_n(t) = 2^n P_n(t) from the explicit
/// alternating-binomial expansion
///   Q_n(t) = sum_k (-1)^k C(n,k) C(2n-2k,n) t^(n-2k).
/// Integer coefficients, leading coefficient C(2n,n), parity (-1)^n.
inline SparsePoly q_poly_explicit(std::size_t n) {
    SparsePoly q(t_vars());
    for (std::size_t k = 0; 2 * k <= n; ++k) {
        BigInt c = binomial(n, k) * binomial(2 * n - 2 * k, n);
        if (k % 2 == 1) c = -c;
        q.add_term(Exponents(static_cast<std::uint32_t>(n - 2 * k)), std::move(c));
    }
    return q;
}

inline SparsePoly q_poly(std::size_t n) { return q_poly_explicit(n); }

/// Q_0..Q_{n_max} built from the three-term recurrence
///   (n+1) Q_{n+1} = 2(2n+1) t Q_n - 4n Q_{n-1},
/// dividing exactly by (n+1) at each step. Independent of the explicit sum.
inline std::vector<SparsePoly> q_poly_list_recurrence(std::size_t n_max) {
    std::vector<SparsePoly> q;
    q.reserve(n_max + 1);
    q.push_back(SparsePoly::constant(t_vars(), 1));
    if (n_max >= 1) q.push_back(SparsePoly::monomial(t_vars(), Exponents(1), 2));
    for (std::size_t n = 1; n < n_max; ++n) {
        SparsePoly t = detail::shift_var(q[n], 0) * BigInt(2 * (2 * n + 1));
        t -= q[n - 1] * BigInt(4 * n);
        q.push_back(exact_div_int(t, BigInt(n + 1)));
    }
    return q;
}

/// The Legendre operator L f = -((1 - t^2) f')' applied symbolically in Z[t].
inline SparsePoly apply_legendre_operator(const SparsePoly& f) {
    if (f.vars() != t_vars()) throw ArityMismatch("operator expects Z[t]");
    SparsePoly fp = derivative(f, 0);
    SparsePoly g = detail::shift_var(detail::shift_var(fp, 0), 0) - fp; // (t^2 - 1) f'
    return derivative(g, 0);
}

/// Image of t^m under (L + beta*t - lambda), as sparse column entries
/// (row = t-power, entry in Z[beta, lambda]):
///   beta at t^(m+1), (m(m+1) - lambda) at t^m, -m(m-1) at t^(m-2).
inline std::vector<std::pair<std::size_t, SparsePoly>> operator_on_monomial(std::size_t m) {
    std::vector<std::pair<std::size_t, SparsePoly>> col;
    SparsePoly diag = SparsePoly::constant(beta_lambda_vars(), BigInt(m) * BigInt(m + 1));
    diag -= SparsePoly::variable(beta_lambda_vars(), 1);
    col.emplace_back(m + 1, SparsePoly::variable(beta_lambda_vars(), 0));
    col.emplace_back(m, std::move(diag));
    if (m >= 2)
        col.emplace_back(m - 2,
                         SparsePoly::constant(beta_lambda_vars(), -BigInt(m) * BigInt(m - 1)));
    return col;
}

/// The (n+1)x(n+1) monomial-basis compression matrix over Z[beta, lambda]:
/// columns 0..n-1 carry the operator images of 1, t, ..., t^(n-1) in the
/// basis (1, t, ..., t^n); the last column is -Q_n.
inline DenseMat<SparsePoly> build_M(std::size_t n) {
    if (n < 1) throw InvalidInput("build_M needs n >= 1");
    const SparsePoly zero(beta_lambda_vars());
    DenseMat<SparsePoly> m(n + 1, zero);
    for (std::size_t col = 0; col < n; ++col)
        for (auto& [row, entry] : operator_on_monomial(col))
            if (row <= n) m.at(row, col) = std::move(entry);
    const SparsePoly qn = q_poly(n);
    for (const auto& [e, c] : qn.terms())
        m.at(e[0], n) = SparsePoly::constant(beta_lambda_vars(), -c);
    return m;
}

inline SparsePoly det_M_fraction_free(std::size_t n) {
    const SparsePoly zero(beta_lambda_vars());
    const SparsePoly one = SparsePoly::constant(beta_lambda_vars(), 1);
    return det_fraction_free(build_M(n), zero, one);
}

inline SparsePoly det_M_cofactor(std::size_t n) {
    const SparsePoly zero(beta_lambda_vars());
    return det_cofactor(build_M(n), zero);
}

/// Continuant D_n = det B_n of the Legendre-basis tridiagonal block:
///   D_0 = 1, D_1 = -lambda,
///   D_{n+1} = (n(n+1) - lambda) D_n - (n^2 beta^2 / ((2n-1)(2n+1))) D_{n-1}.
inline Rational d_continuant(std::size_t n, const Rational& beta, const Rational& lambda) {
    Rational dm1 = 1;       // D_0
    if (n == 0) return dm1;
    Rational d = -lambda;   // D_1
    const Rational beta2 = beta * beta;
    for (std::size_t k = 1; k < n; ++k) {
        Rational next = (Rational(BigInt(k) * BigInt(k + 1)) - lambda) * d;
        next -= Rational(BigInt(k) * BigInt(k), BigInt(2 * k - 1) * BigInt(2 * k + 1)) * beta2 * dm1;
        dm1 = d;
        d = next;
    }
    return d;
}

/// The n x n Legendre-basis block B_n evaluated at a rational point:
/// diag j(j+1)-lambda, super 2j*beta/(2j+1), sub (j+1)*beta/(2(2j+1)).
struct TridiagB {
    std::size_t n = 0;
    std::vector<Rational> diag;   // j = 0..n-1
    std::vector<Rational> super;  // entry (j-1, j), j = 1..n-1
    std::vector<Rational> sub;    // entry (j+1, j), j = 0..n-2

    static TridiagB build(std::size_t n, const Rational& beta, const Rational& lambda) {
        TridiagB b;
        b.n = n;
        for (std::size_t j = 0; j < n; ++j)
            b.diag.push_back(Rational(BigInt(j) * BigInt(j + 1)) - lambda);
        for (std::size_t j = 1; j < n; ++j)
            b.super.push_back(Rational(BigInt(2 * j), BigInt(2 * j + 1)) * beta);
        for (std::size_t j = 0; j + 1 < n; ++j)
            b.sub.push_back(Rational(BigInt(j + 1), BigInt(2) * BigInt(2 * j + 1)) * beta);
        return b;
    }

    DenseMat<Rational> dense() const {
        DenseMat<Rational> m(n, Rational(0));
        for (std::size_t j = 0; j < n; ++j) m.at(j, j) = diag[j];
        for (std::size_t j = 1; j < n; ++j) m.at(j - 1, j) = super[j - 1];
        for (std::size_t j = 0; j + 1 < n; ++j) m.at(j + 1, j) = sub[j];
        return m;
    }
};

/// Symbolic identity det M_n = -u~_n(-beta^2, lambda) in Z[beta, lambda].
inline bool verify_detM_identity(std::size_t n, UtildeSeq& seq, std::string* witness = nullptr) {
    const SparsePoly lhs = det_M_fraction_free(n);
    const SparsePoly rhs = -substitute_neg_square(seq.at(n));
    if (lhs == rhs) return true;
    if (witness) {
        std::ostringstream os;
        os << "det M_" << n << " = " << lhs.str() << " but -u~_" << n
           << "(-beta^2,lambda) = " << rhs.str();
        *witness = os.str();
    }
    return false;
}

struct GridReport {
    std::size_t n = 0;
    std::size_t points = 0;
    std::vector<std::string> failures;
    bool pass() const { return failures.empty(); }
};

/// Pointwise comparison det M_n = C_n * (-D_n) and D_n = v_n(-beta^2, lambda)
/// on the full integer grid beta, lambda in {1..n+1}. Both total degrees are
/// at most n, so agreement on the (n+1)x(n+1) grid certifies the polynomial
/// identities.
inline GridReport verify_basis_comparison(std::size_t n) {
    GridReport rep;
    rep.n = n;
    const DenseMat<SparsePoly> M = build_M(n);
    const BigInt cn = central_binomial(n);
    for (long bi = 1; bi <= static_cast<long>(n) + 1; ++bi) {
        for (long li = 1; li <= static_cast<long>(n) + 1; ++li) {
            const Rational beta(bi), lambda(li);
            ++rep.points;
            DenseMat<Rational> mv(n + 1, Rational(0));
            const RatPoint pt{beta, lambda};
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t j = 0; j <= n; ++j)
                    if (!M.at(i, j).is_zero()) mv.at(i, j) = M.at(i, j).eval(pt);
            const Rational detm = det_fraction_free(mv, Rational(0), Rational(1));
            const Rational dn = d_continuant(n, beta, lambda);
            const Rational vn = v_eval(-beta * beta, lambda, n)[n];
            if (detm != Rational(cn) * (-dn)) {
                std::ostringstream os;
                os << "det M_" << n << "(" << bi << "," << li << ") = " << rat_str(detm)
                   << " != C_n*(-D_n) = " << rat_str(Rational(cn) * (-dn));
                rep.failures.push_back(os.str());
            }
            if (dn != vn) {
                std::ostringstream os;
                os << "D_" << n << "(" << bi << "," << li << ") = " << rat_str(dn)
                   << " != v_n = " << rat_str(vn);
                rep.failures.push_back(os.str());
            }
        }
    }
    return rep;
}

} // namespace trek
