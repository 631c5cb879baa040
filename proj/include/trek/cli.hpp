#pragma once

#include <CLI11.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "trek/coeffring.hpp"
#include "trek/json_io.hpp"
#include "trek/legendre.hpp"
#include "trek/recurrence.hpp"
#include "trek/spectral.hpp"
#include "trek/verify.hpp"

namespace trek::cli {

// exit codes: 0 success, 1 verification failure / broken invariant,
// 2 usage error, 3 solver non-convergence
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNoConverge = 3;

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

struct SuiteDefaults {
    std::size_t n_max = 0;
    std::size_t samples = 0;
};

inline SuiteDefaults suite_defaults(const std::string& s) {
    if (s == "integrality" || s == "bounds") return {300, 0};
    if (s == "detM") return {12, 0};
    if (s == "basis") return {20, 0};
    if (s == "compression") return {50, 100};
    if (s == "minors") return {20, 20};
    if (s == "coeffring") return {60, 50};
    if (s == "degenerate") return {0, 0};
    throw InvalidInput("unknown suite '" + s + "'");
}

inline json report_to_json(const VerifyReport& rep) {
    json j;
    j["command"] = "verify";
    j["suite"] = rep.suite;
    json params;
    for (const auto& [k, v] : rep.params) params[k] = v;
    j["params"] = std::move(params);
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json row;
        row["name"] = c.name;
        row["pass"] = c.pass;
        if (!c.witness.empty()) row["witness"] = c.witness;
        checks.push_back(std::move(row));
    }
    j["checks"] = std::move(checks);
    json totals;
    totals["rows"] = rep.checks.size();
    totals["passed"] = rep.passed();
    totals["failed"] = rep.failed();
    totals["assertions"] = rep.total_checks;
    j["totals"] = std::move(totals);
    j["pass"] = rep.all_pass();
    return j;
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

} // namespace detail

/// Parse and execute one invocation. Everything deterministic lands on
/// `out`; diagnostics (including wall times) go to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact-arithmetic kernel for the integral three-term recurrence family "
                 "u~_n(x,lambda), its Legendre-compression determinant identities, "
                 "tridiagonal truncations, and the decaying-branch eigenvalue solver"};
    app.fallthrough();
    app.require_subcommand(1);

    bool csv = false;
    app.add_flag("--csv", csv, "emit CSV instead of JSON");
    bool json_flag = false;
    app.add_flag("--json", json_flag, "emit JSON (default)");

    auto* gen = app.add_subcommand("gen-u", "emit u~_0..u~_N");
    std::size_t gen_n = 0;
    gen->add_option("--n", gen_n, "largest index N")->required();

    auto* qp = app.add_subcommand("q-poly", "emit the scaled Legendre polynomial Q_N");
    std::size_t qp_n = 0;
    qp->add_option("--n", qp_n, "index N")->required();

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string ver_suite;
    ver->add_option("--suite", ver_suite,
                    "integrality|bounds|detM|basis|compression|minors|degenerate|coeffring")
        ->required();
    std::optional<std::size_t> ver_nmax;
    ver->add_option("--n-max", ver_nmax, "largest index (suite-specific default)");
    std::optional<std::size_t> ver_samples;
    ver->add_option("--samples", ver_samples, "points per index (suite-specific default)");
    std::uint64_t ver_seed = 1;
    ver->add_option("--seed", ver_seed, "sampler seed (default 1)");

    auto* sol = app.add_subcommand("solve", "locate the depth-N branch eigenvalue");
    std::string sol_a2;
    sol->add_option("--a2", sol_a2, "a^2 as a rational (p/q, decimal, or integer)")->required();
    std::size_t sol_depth = 0;
    sol->add_option("--depth", sol_depth, "truncation depth N >= 1")->required();
    std::string sol_tol = "2^-64";
    sol->add_option("--tol", sol_tol, "bisection tolerance (default 2^-64)");
    std::size_t sol_root = 1;
    sol->add_option("--root-index", sol_root, "which positive root to bracket (default 1)");
    std::vector<std::size_t> sol_table;
    sol->add_option("--table", sol_table,
                    "convergence table over these depths instead of a single solve");

    auto* dec = app.add_subcommand("decay", "growth/decay table of |u^_n| on the solved branch");
    std::string dec_a2;
    dec->add_option("--a2", dec_a2, "a^2 as a rational")->required();
    std::size_t dec_depth = 0;
    dec->add_option("--depth", dec_depth, "solver depth for lambda")->required();
    std::size_t dec_nmax = 0;
    dec->add_option("--n-max", dec_nmax, "table length")->required();
    std::string dec_tol = "2^-128";
    dec->add_option("--tol", dec_tol, "solver tolerance (default 2^-128)");

    auto* cert = app.add_subcommand("certify", "integer certificate (sq)^n u^_n");
    std::string cert_a2, cert_lambda;
    cert->add_option("--a2", cert_a2, "a^2 = r/s")->required();
    cert->add_option("--lambda", cert_lambda, "lambda = p/q")->required();
    std::size_t cert_nmax = 0;
    cert->add_option("--n-max", cert_nmax, "largest index")->required();

    auto* cr = app.add_subcommand("coeff-ring", "Taylor coefficient c_n in Z[pi^2, C, L]");
    std::size_t cr_n = 0;
    cr->add_option("--n", cr_n, "index n")->required();
    bool cr_eval = false;
    cr->add_flag("--eval", cr_eval, "numerically evaluate with user constants");
    std::string cr_c, cr_l, cr_pi2;
    cr->add_option("--c", cr_c, "value of C (rational/decimal) for --eval");
    cr->add_option("--l", cr_l, "value of L for --eval");
    cr->add_option("--pi2", cr_pi2, "exact override for pi^2 (testing)");
    unsigned cr_prec = 128;
    cr->add_option("--prec", cr_prec, "pi^2 enclosure precision in bits (default 128)");

    std::vector<char*> argv;
    std::string prog = "trek";
    argv.push_back(prog.data());
    for (auto& s : args) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*gen) {
            UtildeSeq seq(gen_n);
            if (csv) {
                out << "n,r,s,coeff\n";
                for (std::size_t n = 0; n <= gen_n; ++n)
                    for (const auto& [e, c] : seq.at(n).terms())
                        out << n << "," << e[0] << "," << e[1] << "," << c.str() << "\n";
            } else {
                json j;
                j["command"] = "gen-u";
                j["n"] = gen_n;
                json entries = json::array();
                for (std::size_t n = 0; n <= gen_n; ++n) {
                    json row;
                    row["n"] = n;
                    row["poly"] = poly_to_json(seq.at(n));
                    entries.push_back(std::move(row));
                }
                j["entries"] = std::move(entries);
                detail::emit(out, j);
            }
            return kExitOk;
        }

        if (*qp) {
            const SparsePoly q = q_poly(qp_n);
            if (csv) {
                out << "k,coeff\n";
                for (const auto& [e, c] : q.terms())
                    out << e[0] << "," << c.str() << "\n";
            } else {
                json j;
                j["command"] = "q-poly";
                j["n"] = qp_n;
                j["poly"] = poly_to_json(q);
                detail::emit(out, j);
            }
            return kExitOk;
        }

        if (*ver) {
            const detail::SuiteDefaults def = detail::suite_defaults(ver_suite);
            const std::size_t n_max = ver_nmax.value_or(def.n_max);
            const std::size_t samples = ver_samples.value_or(def.samples);
            const VerifyReport rep = run_suite(ver_suite, n_max, samples, ver_seed);
            err << "suite " << ver_suite << " finished in " << rep.wall_seconds << " s\n";
            if (csv) {
                out << "check,pass,witness\n";
                for (const auto& c : rep.checks)
                    out << detail::csv_escape(c.name) << "," << (c.pass ? "true" : "false")
                        << "," << detail::csv_escape(c.witness) << "\n";
            } else {
                detail::emit(out, detail::report_to_json(rep));
            }
            return rep.all_pass() ? kExitOk : kExitVerifyFail;
        }

        if (*sol) {
            const Rational a2 = parse_rational(sol_a2);
            const Rational tol = parse_rational(sol_tol);
            if (!sol_table.empty()) {
                const BranchSolveReport rep = convergence_table(a2, sol_table, tol);
                if (csv) {
                    out << "depth,status,lambda,bracket_lo,bracket_hi,residual\n";
                    for (const auto& s : rep.solves)
                        out << s.depth << "," << to_string(s.status) << ","
                            << rat_str(s.lambda) << "," << rat_str(s.bracket.lo) << ","
                            << rat_str(s.bracket.hi) << "," << rat_str(s.residual) << "\n";
                } else {
                    json j;
                    j["command"] = "solve";
                    j.update(convergence_to_json(rep));
                    detail::emit(out, j);
                }
                return rep.all_converged ? kExitOk : kExitNoConverge;
            }
            SolveOptions opt;
            opt.tol = tol;
            opt.root_index = sol_root;
            const BranchSolve s = lambda_branch(a2, sol_depth, opt);
            if (csv) {
                out << "depth,status,lambda,bracket_lo,bracket_hi,residual\n";
                out << s.depth << "," << to_string(s.status) << "," << rat_str(s.lambda)
                    << "," << rat_str(s.bracket.lo) << "," << rat_str(s.bracket.hi) << ","
                    << rat_str(s.residual) << "\n";
            } else {
                json j;
                j["command"] = "solve";
                j.update(solve_to_json(s, a2, tol));
                detail::emit(out, j);
            }
            return s.status == SolveStatus::converged ? kExitOk : kExitNoConverge;
        }

        if (*dec) {
            const Rational a2 = parse_rational(dec_a2);
            const Rational tol = parse_rational(dec_tol);
            SolveOptions opt;
            opt.tol = tol;
            const BranchSolve s = lambda_branch(a2, dec_depth, opt);
            if (s.status != SolveStatus::converged) {
                json j;
                j["command"] = "decay";
                j["solve"] = solve_to_json(s, a2, tol);
                detail::emit(out, j);
                return kExitNoConverge;
            }
            const DecayReport rep = decay_diagnostic(a2, s.lambda, dec_nmax);
            if (csv) {
                out << "n,uhat_abs,s_n,decreasing\n";
                for (const auto& row : rep.rows) {
                    char sbuf[48];
                    std::snprintf(sbuf, sizeof(sbuf), "%.6f", row.s_n);
                    out << row.n << "," << trek::detail::decimal_from_log2(row.log2_abs_uhat)
                        << "," << sbuf << "," << (row.decreasing ? "true" : "false") << "\n";
                }
            } else {
                json j;
                j["command"] = "decay";
                j["depth"] = dec_depth;
                j["tol"] = rat_str(tol);
                j.update(decay_to_json(rep));
                detail::emit(out, j);
            }
            return kExitOk;
        }

        if (*cert) {
            const Rational a2 = parse_rational(cert_a2);
            const Rational lambda = parse_rational(cert_lambda);
            const CertificateSeq c = integer_certificate(a2, lambda, cert_nmax);
            if (csv) {
                out << "n,value\n";
                for (std::size_t n = 0; n < c.entries.size(); ++n)
                    out << n << "," << c.entries[n].str() << "\n";
            } else {
                json j;
                j["command"] = "certify";
                j.update(certificate_to_json(c));
                detail::emit(out, j);
            }
            return kExitOk;
        }

        if (*cr) {
            UtildeSeq seq(cr_n);
            const SparsePoly h = c_n_symbolic(cr_n, seq);
            if (csv) {
                out << "pi2_exp,C_exp,L_exp,coeff\n";
                for (const auto& [e, c] : h.terms())
                    out << e[0] << "," << e[1] << "," << e[2] << "," << c.str() << "\n";
                return kExitOk;
            }
            json j;
            j["command"] = "coeff-ring";
            j["n"] = cr_n;
            j["poly"] = poly_to_json(h);
            if (cr_eval) {
                if (cr_c.empty() || cr_l.empty())
                    throw InvalidInput("--eval requires --c and --l");
                EvalConstants consts;
                consts.C_value = parse_rational(cr_c);
                consts.L_value = parse_rational(cr_l);
                consts.pi_bits = cr_prec;
                if (!cr_pi2.empty()) consts.pi2_override = parse_rational(cr_pi2);
                const NumericValue v = c_n_numeric(cr_n, consts, seq);
                json ev;
                ev["value"] = rat_str(v.value);
                ev["value_decimal"] = to_decimal_string(v.value, 40);
                ev["error_bound"] = rat_str(v.error_bound);
                json cj;
                cj["C"] = rat_str(consts.C_value);
                cj["L"] = rat_str(consts.L_value);
                cj["pi_bits"] = consts.pi_bits;
                if (consts.pi2_override) cj["pi2_override"] = rat_str(*consts.pi2_override);
                ev["constants"] = std::move(cj);
                ev["provenance"] =
                    "constants are user-supplied inputs; this tool does not derive them";
                j["eval"] = std::move(ev);
            }
            detail::emit(out, j);
            return kExitOk;
        }
    } catch (const InvalidInput& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidConstants& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NotDivisible& e) {
        err << "invariant violated: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const NonInteger& e) {
        err << "invariant violated: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const ExponentViolation& e) {
        err << "invariant violated: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const ExactDivisionFailure& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const ArityMismatch& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    err << "no subcommand executed\n";
    return kExitUsage;
}

} // namespace trek::cli
