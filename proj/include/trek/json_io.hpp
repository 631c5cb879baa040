#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "trek/algebra.hpp"
#include "trek/coeffring.hpp"
#include "trek/sparse_poly.hpp"
#include "trek/spectral.hpp"

namespace trek {

using json = nlohmann::ordered_json;

namespace detail {

/// "m.mmme±k"-style decimal from a log2 magnitude; diagnostics only.
inline std::string decimal_from_log2(double l2) {
    if (std::isinf(l2)) return "0";
    const double l10 = l2 * 0.30102999566398119521; // log10(2)
    double k = std::floor(l10);
    double mant = std::pow(10.0, l10 - k);
    if (mant >= 9.99995) { // keep the mantissa in [1, 10)
        mant /= 10.0;
        k += 1;
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4fe%+d", mant, static_cast<int>(k));
    return buf;
}

} // namespace detail

/// Wire schema: {"vars":[...],"terms":[{"e":[...],"c":"<decimal>"}]},
/// terms in canonical graded-lex descending order.
inline json poly_to_json(const SparsePoly& p) {
    json j;
    j["vars"] = p.vars();
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        json t;
        std::vector<std::uint32_t> exps;
        for (std::size_t i = 0; i < p.arity(); ++i) exps.push_back(e[i]);
        t["e"] = exps;
        t["c"] = c.str();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline json bracket_to_json(const Bracket& b) {
    return json::array({rat_str(b.lo), rat_str(b.hi)});
}

inline json solve_to_json(const BranchSolve& s, const Rational& a2, const Rational& tol) {
    json j;
    j["a2"] = rat_str(a2);
    j["depth"] = s.depth;
    j["tol"] = rat_str(tol);
    j["root_index"] = s.root_index;
    j["status"] = to_string(s.status);
    if (s.status == SolveStatus::converged) {
        j["lambda"] = rat_str(s.lambda);
        j["lambda_decimal"] = to_decimal_string(s.lambda, 40);
        j["bracket"] = bracket_to_json(s.bracket);
        j["residual"] = rat_str(s.residual);
        j["residual_decimal"] = detail::decimal_from_log2(log2_abs(s.residual));
        j["exact_root"] = s.exact_root;
    }
    if (s.tangency_lambda) {
        j["tangency_lambda"] = rat_str(*s.tangency_lambda);
        j["tangency_abs_det"] = rat_str(*s.tangency_abs_det);
    }
    j["notes"] = json::array(
        {"the root is the root_index-th positive zero of the depth-N truncated "
         "determinant; finite-depth root ordering is a heuristic for the decaying branch",
         "no external reference value exists for lambda(a); outputs are depth-N "
         "approximations at the stated tolerance"});
    return j;
}

inline json convergence_to_json(const BranchSolveReport& rep) {
    json j;
    j["a2"] = rat_str(rep.a2);
    j["tol"] = rat_str(rep.tol);
    j["all_converged"] = rep.all_converged;
    json rows = json::array();
    for (std::size_t i = 0; i < rep.solves.size(); ++i) {
        const BranchSolve& s = rep.solves[i];
        json r;
        r["depth"] = s.depth;
        r["status"] = to_string(s.status);
        if (s.status == SolveStatus::converged) {
            r["lambda"] = rat_str(s.lambda);
            r["lambda_decimal"] = to_decimal_string(s.lambda, 40);
            r["bracket"] = bracket_to_json(s.bracket);
            r["residual"] = rat_str(s.residual);
        }
        if (i + 1 < rep.solves.size()) {
            r["diff_to_next"] = rat_str(rep.diffs[i]);
            r["diff_to_next_decimal"] = to_decimal_string(rep.diffs[i], 40);
            if (rep.residual_at_next_depth[i])
                r["residual_at_next_depth"] = rat_str(*rep.residual_at_next_depth[i]);
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["notes"] = json::array(
        {"successive differences are recorded, not asserted; no convergence rate is known",
         "no external reference value exists for lambda(a)"});
    return j;
}

inline json certificate_to_json(const CertificateSeq& c) {
    json j;
    j["a2"] = rat_str(c.a2);
    j["lambda"] = rat_str(c.lambda);
    j["base"] = c.base.str();
    json rows = json::array();
    for (std::size_t n = 0; n < c.entries.size(); ++n) {
        json r;
        r["n"] = n;
        r["value"] = c.entries[n].str();
        rows.push_back(std::move(r));
    }
    j["entries"] = std::move(rows);
    return j;
}

inline json decay_to_json(const DecayReport& rep) {
    json j;
    j["a2"] = rat_str(rep.a2);
    j["lambda"] = rat_str(rep.lambda);
    json rows = json::array();
    for (const DecayRow& row : rep.rows) {
        json r;
        r["n"] = row.n;
        r["uhat_abs"] = detail::decimal_from_log2(row.log2_abs_uhat);
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.6f", row.s_n);
        r["s_n"] = buf;
        r["decreasing"] = row.decreasing;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    if (rep.longest_decreasing_run)
        j["longest_decreasing_run"] =
            json::array({rep.longest_decreasing_run->first, rep.longest_decreasing_run->second});
    else
        j["longest_decreasing_run"] = nullptr;
    j["argmin_n"] = rep.argmin;
    j["min_below_first"] = rep.min_below_first;
    return j;
}

} // namespace trek
