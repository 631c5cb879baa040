#include <catch2/catch_amalgamated.hpp>

#include "trek/sampling.hpp"
#include "trek/spectral.hpp"

using namespace trek;

namespace {

// enclosure of 1 - sqrt(2/3) = 1 - sqrt(6)/3 of width 1/(3 * 2^k)
struct Enclosure {
    Rational lo, hi;
};

Enclosure quadratic_oracle(unsigned k) {
    const BigInt s = boost::multiprecision::sqrt(BigInt(6) << (2 * k)); // floor sqrt
    const Rational lo6(s, BigInt(1) << k);
    const Rational hi6(s + 1, BigInt(1) << k);
    return {Rational(1) - hi6 / 3, Rational(1) - lo6 / 3};
}

} // namespace

TEST_CASE("scaled certificate values at (1,1)", "[spectral]") {
    const CertificateSeq c = integer_certificate(Rational(1), Rational(1), 3);
    CHECK(c.base == 1);
    REQUIRE(c.entries.size() == 4);
    CHECK(c.entries[0] == 1);
    CHECK(c.entries[1] == -2);
    CHECK(c.entries[2] == -4);
    CHECK(c.entries[3] == -72);
}

TEST_CASE("certificate at (3,1) vanishes at n=2, zero slice is all zero", "[spectral]") {
    CHECK(integer_certificate(Rational(3), Rational(1), 2).entries[2] == 0);
    const CertificateSeq z = integer_certificate(Rational(0), Rational(0), 12);
    for (std::size_t n = 1; n <= 12; ++n) CHECK(z.entries[n] == 0);
}

TEST_CASE("certificate entries match the rational recurrence", "[spectral][property]") {
    RationalSampler rng(888);
    for (int trial = 0; trial < 20; ++trial) {
        const Rational a2 = rng.next(50, 50);
        const Rational lambda = rng.next(50, 50);
        const CertificateSeq c = integer_certificate(a2, lambda, 25);
        const auto u = u_hat_eval(a2, lambda, 25);
        const BigInt base = den(a2) * den(lambda);
        for (std::size_t n = 0; n <= 25; ++n)
            CHECK(Rational(c.entries[n], int_pow(base, n)) == u[n]);
    }
}

TEST_CASE("off-branch growth at (1,1)", "[spectral]") {
    const CertificateSeq c = integer_certificate(Rational(1), Rational(1), 51);
    for (std::size_t n = 3; n <= 50; ++n)
        CHECK(boost::multiprecision::abs(c.entries[n + 1]) >
              boost::multiprecision::abs(c.entries[n]));
}

TEST_CASE("branch solve at a2=1, N=1 against the quadratic oracle", "[spectral]") {
    SolveOptions opt;
    opt.tol = Rational(1, BigInt(1) << 80);
    const BranchSolve s = lambda_branch(Rational(1), 1, opt);
    REQUIRE(s.status == SolveStatus::converged);
    const Enclosure oracle = quadratic_oracle(120);
    CHECK(s.lambda >= oracle.lo - opt.tol);
    CHECK(s.lambda <= oracle.hi + opt.tol);
    CHECK(s.bracket.lo < s.lambda);
    CHECK(s.lambda < s.bracket.hi);
    CHECK(s.bracket.hi - s.bracket.lo < opt.tol);
    // the bracket really does straddle a sign change
    CHECK(det_T_sign(1, Rational(1), s.bracket.lo) * det_T_sign(1, Rational(1), s.bracket.hi) < 0);
}

TEST_CASE("double root at a2=3, N=1 is caught exactly at the scan grid", "[spectral]") {
    SolveOptions opt;
    opt.tol = Rational(1, BigInt(1) << 40);
    const BranchSolve s = lambda_branch(Rational(3), 1, opt);
    REQUIRE(s.status == SolveStatus::converged);
    CHECK(s.exact_root);
    CHECK(s.lambda == 1);
    CHECK(s.residual == 0);
}

TEST_CASE("tiny a2 gives a tiny first root", "[spectral]") {
    SolveOptions opt;
    opt.tol = Rational(1, BigInt(1) << 40);
    const Rational a2(1, 1000000);
    const BranchSolve s = lambda_branch(a2, 2, opt);
    REQUIRE(s.status == SolveStatus::converged);
    CHECK(s.lambda < Rational(1, 1000000));
    CHECK(s.lambda > 0);
}

TEST_CASE("asking for a root beyond the scan cap reports no sign change", "[spectral]") {
    SolveOptions opt;
    opt.tol = Rational(1, BigInt(1) << 30);
    opt.root_index = 99;
    const BranchSolve s = lambda_branch(Rational(1), 3, opt);
    CHECK(s.status == SolveStatus::no_sign_change);
}

TEST_CASE("invalid solver inputs", "[spectral]") {
    SolveOptions opt;
    CHECK_THROWS_AS(lambda_branch(Rational(0), 5, opt), InvalidInput);
    CHECK_THROWS_AS(lambda_branch(Rational(-2), 5, opt), InvalidInput);
}

TEST_CASE("fixed point at N=1 matches the scalar map", "[spectral]") {
    // the depth-1 map is lambda <- (a2/3)/(2 - lambda)
    const Rational tol(1, BigInt(1) << 70);
    const FixedPointResult f = lambda_fixed_point(Rational(1), 1, tol, 500);
    REQUIRE(f.status == SolveStatus::converged);
    const Enclosure oracle = quadratic_oracle(100);
    CHECK(f.lambda >= oracle.lo - tol);
    CHECK(f.lambda <= oracle.hi + tol);

    const FixedPointResult z = lambda_fixed_point(Rational(0), 10, tol, 10);
    CHECK(z.status == SolveStatus::converged);
    CHECK(z.lambda == 0);
}

TEST_CASE("branch and fixed point agree", "[spectral]") {
    const Rational tol(1, BigInt(1) << 64);
    for (const auto& [a2i, Ni] : std::vector<std::pair<int, std::size_t>>{{1, 5}, {2, 10}}) {
        const Rational a2(a2i);
        SolveOptions opt;
        opt.tol = tol;
        const BranchSolve b = lambda_branch(a2, Ni, opt);
        const FixedPointResult f = lambda_fixed_point(a2, Ni, tol, 2000);
        REQUIRE(b.status == SolveStatus::converged);
        REQUIRE(f.status == SolveStatus::converged);
        CHECK(boost::multiprecision::abs(b.lambda - f.lambda) < tol);
    }
}

TEST_CASE("convergence table is deterministic and self-consistent", "[spectral]") {
    // tight tolerance so successive differences are resolved, not rounded to 0
    const Rational tol(1, BigInt(1) << 192);
    const std::vector<std::size_t> depths{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const BranchSolveReport r1 = convergence_table(Rational(1), depths, tol);
    const BranchSolveReport r2 = convergence_table(Rational(1), depths, tol);
    REQUIRE(r1.solves.size() == depths.size());
    CHECK(r1.all_converged);
    for (std::size_t i = 0; i < depths.size(); ++i) {
        CHECK(r1.solves[i].lambda == r2.solves[i].lambda);
        CHECK(r1.solves[i].depth == depths[i]);
    }
    // differences eventually decrease monotonically
    const std::size_t m = r1.diffs.size();
    REQUIRE(m >= 4);
    for (std::size_t i = m - 3; i < m; ++i) {
        CHECK(r1.diffs[i] > 0);
        CHECK(r1.diffs[i] < r1.diffs[i - 1]);
    }
    CHECK(r1.diffs[m - 1] < r1.diffs[0]);
    CHECK_THROWS_AS(convergence_table(Rational(1), {3, 3}, tol), InvalidInput);
}

TEST_CASE("decay diagnostic on- and off-branch", "[spectral]") {
    // all-zero slice
    const DecayReport z = decay_diagnostic(Rational(0), Rational(0), 10);
    for (const auto& row : z.rows) {
        CHECK(std::isinf(row.log2_abs_uhat));
        CHECK(row.s_n == 0.0);
    }

    // off-branch growth
    const DecayReport off = decay_diagnostic(Rational(1), Rational(1), 50);
    for (std::size_t n = 3; n < 50; ++n) CHECK(!off.rows[n - 1].decreasing);

    // on-branch: solve at depth 30 and watch an initial decay window
    SolveOptions opt;
    opt.tol = Rational(1, BigInt(1) << 96);
    const BranchSolve s = lambda_branch(Rational(1), 30, opt);
    REQUIRE(s.status == SolveStatus::converged);
    const DecayReport on = decay_diagnostic(Rational(1), s.lambda, 60);
    REQUIRE(on.longest_decreasing_run.has_value());
    CHECK(on.longest_decreasing_run->second - on.longest_decreasing_run->first >= 3);
    CHECK(on.min_below_first);
    CHECK(on.argmin > 1);
}

TEST_CASE("residual scale matches the rational determinant", "[spectral]") {
    RationalSampler rng(4321);
    for (int trial = 0; trial < 10; ++trial) {
        const Rational a2 = rng.next(100, 50);
        const Rational lambda = rng.next(100, 50);
        for (std::size_t N : {1, 3, 7}) {
            const Rational direct = boost::multiprecision::abs(det_T(N, a2, lambda));
            CHECK(det_T_abs(N, a2, lambda) == direct);
        }
    }
}
