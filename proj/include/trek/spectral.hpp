#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trek/algebra.hpp"
#include "trek/errors.hpp"
#include "trek/recurrence.hpp"
#include "trek/tridiag.hpp"

namespace trek {

/// The integer sequence W_n = (s q)^n u^_n(a2, lambda) for a2 = r/s and
/// lambda = p/q in lowest terms. Integrality of every entry is a theorem;
/// the recurrence
///   W_{n+1} = [ (4n+2) s (n(n+1) q - p) W_n + 4n r q^2 s W_{n-1} ] / (n+1)
/// asserts it stepwise, aborting with NonInteger on any remainder.
inline std::vector<BigInt> scaled_u_hat(const Rational& a2, const Rational& lambda,
                                        std::size_t n_max) {
    const BigInt r = num(a2), s = den(a2), p = num(lambda), q = den(lambda);
    std::vector<BigInt> w;
    w.reserve(n_max + 1);
    w.push_back(1);
    if (n_max >= 1) w.push_back(-2 * p * s);
    const BigInt rq2s = r * q * q * s;
    for (std::size_t n = 1; n < n_max; ++n) {
        BigInt t = BigInt(4 * n + 2) * s * (BigInt(n) * BigInt(n + 1) * q - p) * w[n];
        t += BigInt(4 * n) * rq2s * w[n - 1];
        BigInt next, rem;
        boost::multiprecision::divide_qr(t, BigInt(n + 1), next, rem);
        if (rem != 0) {
            std::ostringstream os;
            os << "(sq)^n u^_n failed integrality at n = " << n + 1 << " for a2 = "
               << rat_str(a2) << ", lambda = " << rat_str(lambda);
            throw NonInteger(os.str());
        }
        w.push_back(std::move(next));
    }
    return w;
}

/// Exact sign of det T_N(a, lambda): det T_N = W_{N+1} / ((sq)^{N+1} C_{N+1})
/// with a positive scale factor, so only the integer W_{N+1} is needed.
inline int det_T_sign(std::size_t N, const Rational& a2, const Rational& lambda) {
    return sign_of(scaled_u_hat(a2, lambda, N + 1)[N + 1]);
}

enum class SolveStatus {
    converged,
    no_sign_change,
    tangency_candidate,
    not_converged,
    degenerate_truncation,
};

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::no_sign_change: return "no_sign_change";
        case SolveStatus::tangency_candidate: return "tangency_candidate";
        case SolveStatus::not_converged: return "not_converged";
        case SolveStatus::degenerate_truncation: return "degenerate_truncation";
    }
    return "unknown";
}

struct Bracket {
    Rational lo;
    Rational hi;
};

struct BranchSolve {
    SolveStatus status = SolveStatus::no_sign_change;
    std::size_t depth = 0;
    std::size_t root_index = 1;
    Rational lambda;
    Bracket bracket;
    Rational residual;          // |det T_N(a, lambda)|, exact
    bool exact_root = false;
    std::optional<Rational> tangency_lambda;
    std::optional<Rational> tangency_abs_det;
};

struct SolveOptions {
    Rational tol = Rational(1, BigInt(1) << 64);
    std::size_t root_index = 1;
    std::size_t max_scan_steps = 100000;
};

namespace detail {

inline unsigned bits_for_tol(const Rational& tol) {
    unsigned b = 1;
    while (b < 16384 && Rational(1, BigInt(1) << b) > tol) ++b;
    return b;
}

} // namespace detail

/// Exact |det T_N| at a point, via the scaled integer route.
inline Rational det_T_abs(std::size_t N, const Rational& a2, const Rational& lambda) {
    const BigInt w = scaled_u_hat(a2, lambda, N + 1)[N + 1];
    const BigInt scale = int_pow(den(a2) * den(lambda), N + 1) * central_binomial(N + 1);
    return Rational(boost::multiprecision::abs(w), scale);
}

/// Locate the root_index-th positive zero of lambda -> det T_N(a, lambda).
///
/// Scan lambda = h, 2h, ... (h = 1/4, cap 4 max(1, a2)) for sign changes of
/// the exact rational determinant, then bisect the chosen bracket to width
/// < tol. det T_N(a, 0) > 0 for a2 > 0 (all continuant terms positive), so a
/// bracket below the first root exists whenever a sign change exists at all.
/// Iterates are dyadically rounded at 4x the output precision.
///
/// Root ordering of the finite-depth determinant is a heuristic stand-in for
/// the decaying branch; callers can select other roots via root_index.
inline BranchSolve lambda_branch(const Rational& a2, std::size_t N, const SolveOptions& opt) {
    if (a2 <= 0) throw InvalidInput("lambda_branch requires a2 > 0");
    if (N < 1) throw InvalidInput("lambda_branch requires depth N >= 1");
    if (opt.tol <= 0) throw InvalidInput("tolerance must be positive");
    if (opt.root_index < 1) throw InvalidInput("root_index must be >= 1");

    BranchSolve out;
    out.depth = N;
    out.root_index = opt.root_index;
    const unsigned bits = detail::bits_for_tol(opt.tol);
    const unsigned iter_bits = 4 * bits;

    const Rational h(1, 4);
    const Rational cap = 4 * std::max(Rational(1), a2);

    Rational prev = 0;
    int prev_sign = det_T_sign(N, a2, prev);
    std::size_t found = 0;
    std::optional<Rational> best_abs;
    Rational best_lambda;
    Rational lo, hi;
    int lo_sign = 0;
    bool have_bracket = false;

    for (std::size_t k = 1; k <= opt.max_scan_steps; ++k) {
        const Rational lam = h * static_cast<long>(k);
        if (lam > cap) break;
        const int sg = det_T_sign(N, a2, lam);
        if (sg == 0) {
            ++found;
            if (found == opt.root_index) {
                out.status = SolveStatus::converged;
                out.exact_root = true;
                out.lambda = lam;
                out.bracket = {lam, lam};
                out.residual = 0;
                return out;
            }
            prev = lam;
            prev_sign = 0;
            continue;
        }
        const Rational ad = det_T_abs(N, a2, lam);
        if (!best_abs || ad < *best_abs) {
            best_abs = ad;
            best_lambda = lam;
        }
        if (prev_sign != 0 && sg != prev_sign) {
            ++found;
            if (found == opt.root_index) {
                lo = prev;
                hi = lam;
                lo_sign = prev_sign;
                have_bracket = true;
                break;
            }
        }
        prev = lam;
        prev_sign = sg;
    }

    if (!have_bracket) {
        if (opt.root_index == 1 && best_abs && *best_abs < opt.tol * opt.tol) {
            out.status = SolveStatus::tangency_candidate;
            out.tangency_lambda = best_lambda;
            out.tangency_abs_det = *best_abs;
        } else {
            out.status = SolveStatus::no_sign_change;
        }
        return out;
    }

    while (hi - lo >= opt.tol) {
        Rational mid = dyadic_round((lo + hi) / 2, iter_bits);
        if (mid <= lo || mid >= hi) mid = (lo + hi) / 2;
        const int sg = det_T_sign(N, a2, mid);
        if (sg == 0) {
            out.status = SolveStatus::converged;
            out.exact_root = true;
            out.lambda = mid;
            out.bracket = {lo, hi};
            out.residual = 0;
            return out;
        }
        if (sg == lo_sign)
            lo = mid;
        else
            hi = mid;
    }

    Rational lam = dyadic_round((lo + hi) / 2, iter_bits);
    if (lam <= lo || lam >= hi) lam = (lo + hi) / 2;
    out.status = SolveStatus::converged;
    out.lambda = lam;
    out.bracket = {lo, hi};
    out.residual = det_T_abs(N, a2, lam);
    return out;
}

struct FixedPointResult {
    SolveStatus status = SolveStatus::not_converged;
    std::size_t depth = 0;
    Rational lambda;
    std::vector<Rational> trace;
    std::size_t iterations = 0;
};

/// Fixed point of the depth-N truncated map lambda <- a2 / (3 q_1^(N)(lambda)),
/// started at lambda_0 = a2/6 (q_1 is about 2 near lambda = 0). Iterates are
/// dyadically rounded at 4x the output precision; the loop stops once the
/// step size drops below tol/4, leaving the fixed-point error well under tol.
inline FixedPointResult lambda_fixed_point(const Rational& a2, std::size_t N,
                                           const Rational& tol, std::size_t max_iter) {
    if (a2 < 0) throw InvalidInput("lambda_fixed_point requires a2 >= 0");
    if (tol <= 0) throw InvalidInput("tolerance must be positive");
    FixedPointResult out;
    out.depth = N;
    if (a2 == 0) {
        out.status = SolveStatus::converged;
        out.lambda = 0;
        out.trace = {Rational(0)};
        return out;
    }
    const unsigned iter_bits = 4 * detail::bits_for_tol(tol);
    const Rational stop = tol / 4;
    Rational lam = a2 / 6;
    out.trace.push_back(lam);
    for (std::size_t it = 1; it <= max_iter; ++it) {
        const TruncationState st = trunc_K(N, a2, lam);
        if (!st.q1) {
            out.status = SolveStatus::degenerate_truncation;
            out.lambda = lam;
            out.iterations = it;
            return out;
        }
        if (*st.q1 == 0) {
            out.status = SolveStatus::degenerate_truncation;
            out.lambda = lam;
            out.iterations = it;
            return out;
        }
        const Rational next = dyadic_round(a2 / (3 * (*st.q1)), iter_bits);
        out.trace.push_back(next);
        const Rational diff = boost::multiprecision::abs(next - lam);
        lam = next;
        if (diff < stop) {
            out.status = SolveStatus::converged;
            out.lambda = lam;
            out.iterations = it;
            return out;
        }
    }
    out.status = SolveStatus::not_converged;
    out.lambda = lam;
    out.iterations = max_iter;
    return out;
}

struct BranchSolveReport {
    Rational a2;
    Rational tol;
    std::vector<BranchSolve> solves;                  // one per depth
    std::vector<Rational> diffs;                      // |lambda_{i+1} - lambda_i|
    std::vector<std::optional<Rational>> residual_at_next_depth;
    bool all_converged = false;

    std::vector<std::size_t> depths() const {
        std::vector<std::size_t> d;
        for (const auto& s : solves) d.push_back(s.depth);
        return d;
    }
};

/// lambda_N for each requested depth plus successive differences. The
/// residual of lambda_N under the next depth's determinant is recorded as a
/// diagnostic only; no convergence rate is asserted.
inline BranchSolveReport convergence_table(const Rational& a2,
                                           const std::vector<std::size_t>& depths,
                                           const Rational& tol) {
    BranchSolveReport rep;
    rep.a2 = a2;
    rep.tol = tol;
    SolveOptions opt;
    opt.tol = tol;
    for (std::size_t i = 0; i < depths.size(); ++i) {
        if (i > 0 && depths[i] <= depths[i - 1])
            throw InvalidInput("depths must be strictly increasing");
        rep.solves.push_back(lambda_branch(a2, depths[i], opt));
    }
    rep.all_converged = true;
    for (const auto& s : rep.solves)
        if (s.status != SolveStatus::converged) rep.all_converged = false;
    for (std::size_t i = 0; i + 1 < rep.solves.size(); ++i) {
        if (rep.solves[i].status == SolveStatus::converged &&
            rep.solves[i + 1].status == SolveStatus::converged) {
            rep.diffs.push_back(
                boost::multiprecision::abs(rep.solves[i + 1].lambda - rep.solves[i].lambda));
            rep.residual_at_next_depth.push_back(
                det_T_abs(rep.solves[i + 1].depth, a2, rep.solves[i].lambda));
        } else {
            rep.diffs.push_back(0);
            rep.residual_at_next_depth.push_back(std::nullopt);
        }
    }
    return rep;
}

struct CertificateSeq {
    Rational a2;
    Rational lambda;
    BigInt base;                 // s*q
    std::vector<BigInt> entries; // (s q)^n u^_n, n = 0..n_max
};

/// Exact integers (sq)^n u^_n(a2, lambda); any non-integer aborts.
inline CertificateSeq integer_certificate(const Rational& a2, const Rational& lambda,
                                          std::size_t n_max) {
    CertificateSeq seq;
    seq.a2 = a2;
    seq.lambda = lambda;
    seq.base = den(a2) * den(lambda);
    seq.entries = scaled_u_hat(a2, lambda, n_max);
    return seq;
}

struct DecayRow {
    std::size_t n = 0;
    double log2_abs_uhat = 0;  // log2 |u^_n|; -inf when the entry vanishes
    double s_n = 0;            // n * |u^_n|^(1/(2n))
    bool decreasing = false;   // |u^_{n+1}| < |u^_n| (exact comparison)
};

struct DecayReport {
    Rational a2;
    Rational lambda;
    std::vector<DecayRow> rows; // n = 1..n_max
    std::optional<std::pair<std::size_t, std::size_t>> longest_decreasing_run;
    std::size_t argmin = 1;    // n minimizing |u^_n| over 1..n_max
    bool min_below_first = false;
};

/// Growth/decay table of |u^_n| at a spectral point. On-branch inputs show an
/// initial decay window (the sharper lambda is, the longer), off-branch
/// rational pairs grow without bound. Comparisons between entries are exact;
/// the logged magnitudes are double-precision conveniences.
inline DecayReport decay_diagnostic(const Rational& a2, const Rational& lambda,
                                    std::size_t n_max) {
    if (n_max < 1) throw InvalidInput("decay_diagnostic needs n_max >= 1");
    DecayReport rep;
    rep.a2 = a2;
    rep.lambda = lambda;
    const std::vector<BigInt> w = scaled_u_hat(a2, lambda, n_max);
    const BigInt base = den(a2) * den(lambda);
    const double log2_base = log2_abs(base);

    auto abs_less = [&](std::size_t i, std::size_t j) {
        // |u^_i| < |u^_j| with u^_n = w_n / base^n, cleared of denominators
        const BigInt wi = boost::multiprecision::abs(w[i]);
        const BigInt wj = boost::multiprecision::abs(w[j]);
        if (i <= j) return wi * int_pow(base, j - i) < wj;
        return wi < wj * int_pow(base, i - j);
    };

    for (std::size_t n = 1; n <= n_max; ++n) {
        DecayRow row;
        row.n = n;
        row.log2_abs_uhat = log2_abs(w[n]) - static_cast<double>(n) * log2_base;
        row.s_n = std::isinf(row.log2_abs_uhat)
                      ? 0.0
                      : n * std::exp2(row.log2_abs_uhat / (2.0 * n));
        if (n < n_max) row.decreasing = abs_less(n + 1, n);
        rep.rows.push_back(row);
    }

    // longest run of consecutive exact decreases
    std::size_t run_start = 0, best_len = 0, best_start = 0;
    std::size_t len = 0;
    for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i) {
        if (rep.rows[i].decreasing) {
            if (len == 0) run_start = rep.rows[i].n;
            ++len;
            if (len > best_len) {
                best_len = len;
                best_start = run_start;
            }
        } else {
            len = 0;
        }
    }
    if (best_len > 0)
        rep.longest_decreasing_run = std::make_pair(best_start, best_start + best_len);

    std::size_t argmin = 1;
    for (std::size_t n = 2; n <= n_max; ++n)
        if (abs_less(n, argmin)) argmin = n;
    rep.argmin = argmin;
    rep.min_below_first = argmin != 1 && abs_less(argmin, 1);
    return rep;
}

} // namespace trek
