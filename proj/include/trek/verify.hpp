#pragma once

#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trek/algebra.hpp"
#include "trek/coeffring.hpp"
#include "trek/errors.hpp"
#include "trek/legendre.hpp"
#include "trek/recurrence.hpp"
#include "trek/sampling.hpp"
#include "trek/sparse_poly.hpp"
#include "trek/spectral.hpp"
#include "trek/tridiag.hpp"

namespace trek {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string witness; // empty on pass
};

/// One suite run. Deterministic given its parameters; wall time is kept out
/// of the serialized report so identical invocations stay byte-identical.
struct VerifyReport {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<CheckResult> checks;
    std::size_t total_checks = 0; // individual assertions, >= checks.size()
    double wall_seconds = 0;

    std::size_t passed() const {
        std::size_t k = 0;
        for (const auto& c : checks) k += c.pass;
        return k;
    }
    std::size_t failed() const { return checks.size() - passed(); }
    bool all_pass() const { return failed() == 0; }

    void add(std::string name, bool pass, std::string witness = "") {
        checks.push_back({std::move(name), pass, std::move(witness)});
    }
};

namespace detail {

class SuiteTimer {
public:
    explicit SuiteTimer(VerifyReport& rep)
        : rep_(rep), start_(std::chrono::steady_clock::now()) {}
    ~SuiteTimer() {
        rep_.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    VerifyReport& rep_;
    std::chrono::steady_clock::time_point start_;
};

inline SparsePoly printed_u1() {
    SparsePoly p(xy_vars());
    p.add_term(Exponents(0, 1), -2);
    return p;
}

inline SparsePoly printed_u2() {
    SparsePoly p(xy_vars());
    p.add_term(Exponents(0, 2), 6);
    p.add_term(Exponents(0, 1), -12);
    p.add_term(Exponents(1, 0), 2);
    return p;
}

inline SparsePoly printed_u3() {
    SparsePoly p(xy_vars());
    p.add_term(Exponents(0, 3), -20);
    p.add_term(Exponents(0, 2), 160);
    p.add_term(Exponents(1, 1), -12);
    p.add_term(Exponents(0, 1), -240);
    p.add_term(Exponents(1, 0), 40);
    return p;
}

} // namespace detail

/// The recurrence stays in Z[x, lambda] all the way to n_max, and the first
/// printed entries match coefficient-for-coefficient.
inline VerifyReport run_suite_integrality(std::size_t n_max, UtildeSeq& seq) {
    VerifyReport rep;
    rep.suite = "integrality";
    rep.params = {{"n_max", std::to_string(n_max)}};
    detail::SuiteTimer timer(rep);
    try {
        seq.extend(n_max);
        rep.add("recurrence integral through n=" + std::to_string(n_max), true);
    } catch (const NotDivisible& ex) {
        rep.add("recurrence integral through n=" + std::to_string(n_max), false, ex.what());
    }
    rep.total_checks += n_max;
    if (seq.max_index() >= 3) {
        rep.add("u~_1 = -2 lambda", seq.at(1) == detail::printed_u1());
        rep.add("u~_2 = 6 lambda^2 - 12 lambda + 2 x", seq.at(2) == detail::printed_u2());
        rep.add("u~_3 = -20 lambda^3 + 160 lambda^2 - 12 lambda x - 240 lambda + 40 x",
                seq.at(3) == detail::printed_u3());
        rep.total_checks += 3;
    }
    return rep;
}

/// Weighted support 2r+s <= n plus the per-variable degree bounds, for every
/// computed entry up to n_max.
inline VerifyReport run_suite_bounds(std::size_t n_max, UtildeSeq& seq) {
    VerifyReport rep;
    rep.suite = "bounds";
    rep.params = {{"n_max", std::to_string(n_max)}};
    detail::SuiteTimer timer(rep);
    const BoundsReport br = check_bounds(seq, n_max);
    rep.total_checks += n_max + 1;
    if (br.pass()) {
        rep.add("support bounds hold for all n <= " + std::to_string(n_max), true);
    } else {
        for (const auto& v : br.violations) {
            std::ostringstream os;
            os << v.kind << " at n=" << v.n << ", (r,s)=(" << v.r << "," << v.s << ")";
            rep.add("support bound n=" + std::to_string(v.n), false, os.str());
        }
    }
    return rep;
}

/// Symbolic determinant comparison det M_n = -u~_n(-beta^2, lambda), plus
/// agreement of the two determinant backends on small sizes.
inline VerifyReport run_suite_detM(std::size_t n_max, UtildeSeq& seq) {
    VerifyReport rep;
    rep.suite = "detM";
    rep.params = {{"n_max", std::to_string(n_max)}};
    detail::SuiteTimer timer(rep);
    for (std::size_t n = 1; n <= n_max; ++n) {
        std::string witness;
        const bool ok = verify_detM_identity(n, seq, &witness);
        rep.add("det M_n = -u~_n(-beta^2,lambda), n=" + std::to_string(n), ok, witness);
        ++rep.total_checks;
    }
    const std::size_t backend_max = std::min<std::size_t>(8, n_max);
    for (std::size_t n = 1; n <= backend_max; ++n) {
        const bool ok = det_M_fraction_free(n) == det_M_cofactor(n);
        rep.add("fraction-free == cofactor, n=" + std::to_string(n), ok);
        ++rep.total_checks;
    }
    return rep;
}

/// Grid identity tests det M_n = C_n (-D_n) and D_n = v_n(-beta^2, lambda)
/// on the full (n+1) x (n+1) integer grid.
inline VerifyReport run_suite_basis(std::size_t n_max) {
    VerifyReport rep;
    rep.suite = "basis";
    rep.params = {{"n_max", std::to_string(n_max)}};
    detail::SuiteTimer timer(rep);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const GridReport gr = verify_basis_comparison(n);
        rep.total_checks += 2 * gr.points;
        std::ostringstream os;
        os << "grid " << (n + 1) << "x" << (n + 1) << ", n=" << n;
        rep.add(os.str(), gr.pass(), gr.pass() ? "" : gr.failures.front());
    }
    return rep;
}

/// u^_{N+1} = C_{N+1} det T_N at seeded rational points, exactly.
inline VerifyReport run_suite_compression(std::size_t n_max, std::size_t samples,
                                          std::uint64_t seed) {
    VerifyReport rep;
    rep.suite = "compression";
    rep.params = {{"n_max", std::to_string(n_max)},
                  {"samples", std::to_string(samples)},
                  {"seed", std::to_string(seed)}};
    detail::SuiteTimer timer(rep);
    RationalSampler rng(seed);
    for (std::size_t N = 0; N <= n_max; ++N) {
        std::size_t ok = 0;
        std::string witness;
        for (std::size_t i = 0; i < samples; ++i) {
            const Rational a2 = rng.next();
            const Rational lambda = rng.next();
            std::string w;
            if (verify_compression(N, a2, lambda, &w))
                ++ok;
            else if (witness.empty())
                witness = w;
            ++rep.total_checks;
        }
        std::ostringstream os;
        os << "N=" << N << ": " << ok << "/" << samples << " points";
        rep.add(os.str(), ok == samples, witness);
    }
    return rep;
}

/// Trailing minors Delta_n = K_n plus the determinant/truncant identities at
/// seeded rational points.
inline VerifyReport run_suite_minors(std::size_t n_max, std::size_t samples,
                                     std::uint64_t seed) {
    VerifyReport rep;
    rep.suite = "minors";
    rep.params = {{"n_max", std::to_string(n_max)},
                  {"samples", std::to_string(samples)},
                  {"seed", std::to_string(seed)}};
    detail::SuiteTimer timer(rep);
    RationalSampler rng(seed);
    for (std::size_t N = 1; N <= n_max; ++N) {
        std::size_t ok = 0;
        std::string witness;
        for (std::size_t i = 0; i < samples; ++i) {
            const Rational a2 = rng.next();
            const Rational lambda = rng.next();
            const MinorReport mr = verify_minor_identities(N, a2, lambda);
            rep.total_checks += N + 3;
            if (mr.pass())
                ++ok;
            else if (witness.empty())
                witness = mr.failures.front();
        }
        std::ostringstream os;
        os << "N=" << N << ": " << ok << "/" << samples << " points";
        rep.add(os.str(), ok == samples, witness);
    }
    return rep;
}

/// The K_2 = 0 point (N=3, lambda=0, a2=-280): q_1 undefined while the
/// determinant still vanishes, with the exact printed values.
inline VerifyReport run_suite_degenerate() {
    VerifyReport rep;
    rep.suite = "degenerate";
    rep.params = {{"N", "3"}, {"lambda", "0"}, {"a2", "-280"}};
    detail::SuiteTimer timer(rep);
    const Rational a2(-280), lambda(0);
    const TruncationState st = trunc_K(3, a2, lambda);
    rep.add("K_2 = 0", st.K_at(2) == 0, rat_str(st.K_at(2)));
    rep.add("K_1 = -896", st.K_at(1) == Rational(-896), rat_str(st.K_at(1)));
    rep.add("det T_3 = 0", st.detT == 0, rat_str(st.detT));
    rep.add("q_1 absent", !st.q1.has_value());
    rep.add("det_T route agrees", det_T(3, a2, lambda) == 0);
    std::string w;
    rep.add("compression u^_4 = C_4 * 0 = 0", verify_compression(3, a2, lambda, &w), w);
    const MinorReport mr = verify_minor_identities(3, a2, lambda);
    rep.add("trailing minors at the degenerate point", mr.pass(),
            mr.pass() ? "" : mr.failures.front());
    rep.total_checks += 7;
    return rep;
}

/// Coefficient-ring checks: C-divisibility, exponent bounds (asserted inside
/// the map itself), the substitution cross-check, and the two pinned images.
inline VerifyReport run_suite_coeffring(std::size_t n_max, std::size_t samples,
                                        std::uint64_t seed, UtildeSeq& seq) {
    VerifyReport rep;
    rep.suite = "coeffring";
    rep.params = {{"n_max", std::to_string(n_max)},
                  {"samples", std::to_string(samples)},
                  {"seed", std::to_string(seed)}};
    detail::SuiteTimer timer(rep);

    bool all_div = true;
    std::string div_witness;
    try {
        for (std::size_t n = 0; n <= n_max; ++n) {
            const SparsePoly h = c_n_symbolic(n, seq);
            const DivisibilityReport dr = check_divisibility(h, n);
            ++rep.total_checks;
            if (!dr.pass) {
                all_div = false;
                div_witness = "n=" + std::to_string(n) + ": " + dr.witness;
                break;
            }
        }
    } catch (const ExponentViolation& ex) {
        all_div = false;
        div_witness = ex.what();
    }
    rep.add("C-exponent >= n and exponent bounds, n <= " + std::to_string(n_max), all_div,
            div_witness);

    const std::size_t cross_max = std::min<std::size_t>(40, n_max);
    RationalSampler rng(seed);
    bool all_cross = true;
    std::string cross_witness;
    for (std::size_t n = 0; n <= cross_max && all_cross; ++n) {
        for (std::size_t i = 0; i < samples; ++i) {
            const Rational P = rng.next(100, 100);
            const Rational C = rng.next_nonzero(100, 100);
            const Rational L = rng.next(100, 100);
            std::string w;
            ++rep.total_checks;
            if (!cross_check_substitution(n, P, C, L, seq, &w)) {
                all_cross = false;
                cross_witness = w;
                break;
            }
        }
    }
    rep.add("substitution cross-check, n <= " + std::to_string(cross_max) + ", " +
                std::to_string(samples) + " triples each",
            all_cross, cross_witness);

    // pinned images: c_1 = 4 C L and c_2 = 2 C^2 P + 24 C^2 L^2 + 96 C^3 L
    SparsePoly c1(pcl_vars());
    c1.add_term(Exponents(0, 1, 1), 4);
    SparsePoly c2(pcl_vars());
    c2.add_term(Exponents(1, 2, 0), 2);
    c2.add_term(Exponents(0, 2, 2), 24);
    c2.add_term(Exponents(0, 3, 1), 96);
    rep.add("c_1 = 4 C L", c_n_symbolic(1, seq) == c1);
    rep.add("c_2 = 2 C^2 P + 24 C^2 L^2 + 96 C^3 L", c_n_symbolic(2, seq) == c2);
    rep.total_checks += 2;
    return rep;
}

/// Dispatch by suite name; the n_max/samples/seed triple is interpreted per
/// suite, with suite-appropriate defaults applied by the CLI.
inline VerifyReport run_suite(const std::string& name, std::size_t n_max, std::size_t samples,
                              std::uint64_t seed) {
    if (name == "integrality") {
        UtildeSeq seq;
        return run_suite_integrality(n_max, seq);
    }
    if (name == "bounds") {
        UtildeSeq seq;
        return run_suite_bounds(n_max, seq);
    }
    if (name == "detM") {
        UtildeSeq seq;
        return run_suite_detM(n_max, seq);
    }
    if (name == "basis") return run_suite_basis(n_max);
    if (name == "compression") return run_suite_compression(n_max, samples, seed);
    if (name == "minors") return run_suite_minors(n_max, samples, seed);
    if (name == "degenerate") return run_suite_degenerate();
    if (name == "coeffring") {
        UtildeSeq seq;
        return run_suite_coeffring(n_max, samples, seed, seq);
    }
    throw InvalidInput("unknown suite '" + name + "'");
}

} // namespace trek
