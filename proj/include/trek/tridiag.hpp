#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "trek/algebra.hpp"
#include "trek/errors.hpp"
#include "trek/recurrence.hpp"

namespace trek {

/// beta_n = a^2 (n+1)^2 / ((2n+1)(2n+3)). Everything here depends on a only
/// through a^2, so negative a2 (e.g. the K_2 = 0 test point a2 = -280) is a
/// perfectly good rational input.
inline Rational beta_coeff(std::size_t n, const Rational& a2) {
    return a2 * Rational(BigInt(n + 1) * BigInt(n + 1), BigInt(2 * n + 1) * BigInt(2 * n + 3));
}

/// Depth-N truncant state: the backward sequence K_{N+1}..K_1, the
/// determinant det T_N = -lambda K_1 + (a2/3) K_2, and the truncant
/// q_1 = K_1/K_2 when K_2 != 0 (flagged absent otherwise).
struct TruncationState {
    std::size_t N = 0;
    Rational a2;
    Rational lambda;
    std::vector<Rational> K; // K[i] = K_{i+1}, i = 0..N; i.e. K_1..K_{N+1}
    Rational detT;
    std::optional<Rational> q1;

    const Rational& K_at(std::size_t n) const { // n in 1..N+1
        if (n < 1 || n > N + 1) throw InvalidInput("K index out of range");
        return K[n - 1];
    }
};

/// Backward recurrence K_n = (n(n+1) - lambda) K_{n+1} + beta_n K_{n+2}
/// from K_{N+1} = 1, K_N = N(N+1) - lambda down to n = 1.
inline TruncationState trunc_K(std::size_t N, const Rational& a2, const Rational& lambda) {
    if (N < 1) throw InvalidInput("trunc_K needs N >= 1");
    TruncationState st;
    st.N = N;
    st.a2 = a2;
    st.lambda = lambda;
    st.K.assign(N + 1, Rational(0));
    st.K[N] = 1;                                                   // K_{N+1}
    st.K[N - 1] = Rational(BigInt(N) * BigInt(N + 1)) - lambda;    // K_N
    for (std::size_t n = N - 1; n >= 1; --n) {
        st.K[n - 1] = (Rational(BigInt(n) * BigInt(n + 1)) - lambda) * st.K[n] +
                      beta_coeff(n, a2) * st.K[n + 1];
    }
    st.detT = -lambda * st.K_at(1) + (a2 / 3) * st.K_at(2);
    if (st.K_at(2) != 0) st.q1 = st.K_at(1) / st.K_at(2);
    return st;
}

/// det T_N by the forward continuant along the last row:
///   E_{-1} = 1, E_0 = -lambda,
///   E_N = (N(N+1) - lambda) E_{N-1} + (N^2 a^2 / ((2N-1)(2N+1))) E_{N-2}.
inline Rational det_T(std::size_t N, const Rational& a2, const Rational& lambda) {
    Rational em1 = 1;
    Rational e = -lambda;
    for (std::size_t k = 1; k <= N; ++k) {
        Rational next = (Rational(BigInt(k) * BigInt(k + 1)) - lambda) * e;
        next += Rational(BigInt(k) * BigInt(k), BigInt(2 * k - 1) * BigInt(2 * k + 1)) * a2 * em1;
        em1 = e;
        e = next;
    }
    return e;
}

/// Determinant of the trailing principal submatrix of T_N obtained by
/// deleting the first n rows and columns, computed by bottom-row expansion
/// (a forward continuant over indices n..N). Independent code path from
/// trunc_K, which recurses downward from the other end.
inline Rational trailing_minor(std::size_t n, std::size_t N, const Rational& a2,
                               const Rational& lambda) {
    if (n > N + 1) throw InvalidInput("trailing_minor index out of range");
    if (n == N + 1) return 1;
    Rational fm1 = 1;                                          // empty minor
    Rational f = Rational(BigInt(n) * BigInt(n + 1)) - lambda; // 1x1 block at index n
    for (std::size_t k = n + 1; k <= N; ++k) {
        Rational next = (Rational(BigInt(k) * BigInt(k + 1)) - lambda) * f;
        next += beta_coeff(k - 1, a2) * fm1;
        fm1 = f;
        f = next;
    }
    return f;
}

inline bool verify_compression(std::size_t N, const Rational& a2, const Rational& lambda,
                               std::string* witness = nullptr) {
    const Rational uhat = u_hat_eval(a2, lambda, N + 1)[N + 1];
    const Rational rhs = Rational(central_binomial(N + 1)) * det_T(N, a2, lambda);
    if (uhat == rhs) return true;
    if (witness) {
        std::ostringstream os;
        os << "u^_" << N + 1 << "(" << rat_str(a2) << "," << rat_str(lambda)
           << ") = " << rat_str(uhat) << " != C_{N+1} det T_N = " << rat_str(rhs);
        *witness = os.str();
    }
    return false;
}

struct MinorReport {
    std::size_t N = 0;
    std::vector<std::string> failures;
    bool pass() const { return failures.empty(); }
};

/// Checks, at one rational point:
///   (i)  Delta_n = K_n for 1 <= n <= N+1 (independent minor evaluation),
///   (ii) det T_N = -lambda K_1 + (a2/3) K_2,
///   (iii) on K_2 != 0: lambda q_1 - a2/3 = -det T_N / K_2.
inline MinorReport verify_minor_identities(std::size_t N, const Rational& a2,
                                           const Rational& lambda) {
    MinorReport rep;
    rep.N = N;
    const TruncationState st = trunc_K(N, a2, lambda);
    for (std::size_t n = 1; n <= N + 1; ++n) {
        const Rational delta = trailing_minor(n, N, a2, lambda);
        if (delta != st.K_at(n)) {
            std::ostringstream os;
            os << "Delta_" << n << " = " << rat_str(delta) << " != K_" << n << " = "
               << rat_str(st.K_at(n)) << " at N=" << N;
            rep.failures.push_back(os.str());
        }
    }
    const Rational dt = det_T(N, a2, lambda);
    if (dt != st.detT)
        rep.failures.push_back("det T_N (continuant) != -lambda K_1 + (a2/3) K_2");
    if (st.q1) {
        const Rational lhs = lambda * (*st.q1) - a2 / 3;
        const Rational rhs = -dt / st.K_at(2);
        if (lhs != rhs)
            rep.failures.push_back("lambda q_1 - a2/3 != -det T_N / K_2");
    }
    return rep;
}

} // namespace trek
