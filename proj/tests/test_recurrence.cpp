#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "trek/recurrence.hpp"

using namespace trek;

namespace {

SparsePoly printed_u1() {
    SparsePoly p(xy_vars());
    p.add_term(Exponents(0, 1), -2);
    return p;
}

SparsePoly printed_u2() {
    SparsePoly p(xy_vars());
    p.add_term(Exponents(0, 2), 6);
    p.add_term(Exponents(0, 1), -12);
    p.add_term(Exponents(1, 0), 2);
    return p;
}

SparsePoly printed_u3() {
    SparsePoly p(xy_vars());
    p.add_term(Exponents(0, 3), -20);
    p.add_term(Exponents(0, 2), 160);
    p.add_term(Exponents(1, 1), -12);
    p.add_term(Exponents(0, 1), -240);
    p.add_term(Exponents(1, 0), 40);
    return p;
}

Rational rnd_rat(std::mt19937_64& gen) {
    return Rational(static_cast<std::int64_t>(gen() % 201) - 100,
                    static_cast<std::int64_t>(gen() % 100) + 1);
}

} // namespace

TEST_CASE("first entries match the printed polynomials", "[recurrence]") {
    UtildeSeq seq(3);
    CHECK(seq.at(0) == SparsePoly::constant(xy_vars(), 1));
    CHECK(seq.at(1) == printed_u1());
    CHECK(seq.at(2) == printed_u2());
    CHECK(seq.at(3) == printed_u3());
}

TEST_CASE("central binomial coefficients", "[recurrence]") {
    CHECK(central_binomial(0) == 1);
    CHECK(central_binomial(1) == 2);
    CHECK(central_binomial(2) == 6);
    CHECK(central_binomial(5) == 252);
    // exact ratio invariant
    for (std::size_t n = 0; n < 60; ++n)
        CHECK(central_binomial(n + 1) * BigInt(n + 1) ==
              central_binomial(n) * BigInt(2) * BigInt(2 * n + 1));
}

TEST_CASE("v_eval basics", "[recurrence]") {
    CHECK(v_eval(Rational(17, 3), Rational(5), 1)[1] == -5);
    CHECK(v_eval(Rational(3), Rational(1), 2)[2] == 0); // u~_2(3,1) = 0, C_2 = 6
    CHECK(v_eval(Rational(9), Rational(0), 2)[2] == 3); // v_2 = x/3 at lambda = 0
}

TEST_CASE("u_hat_eval basics", "[recurrence]") {
    CHECK(u_hat_eval(Rational(7, 5), Rational(2, 3), 1)[1] == Rational(-4, 3));
    CHECK(u_hat_eval(Rational(3), Rational(1), 2)[2] == 0);
    const auto u = u_hat_eval(Rational(0), Rational(0), 10);
    for (std::size_t n = 1; n <= 10; ++n) CHECK(u[n] == 0);
}

TEST_CASE("normalization and specialization bridges", "[recurrence][property]") {
    UtildeSeq seq(60);
    std::mt19937_64 gen(424242);
    for (int trial = 0; trial < 50; ++trial) {
        const Rational x = rnd_rat(gen);
        const Rational lambda = rnd_rat(gen);
        const auto v = v_eval(x, lambda, 60);
        const auto u = u_hat_eval(x, lambda, 60);
        for (std::size_t n = 0; n <= 60; ++n) {
            const Rational direct = seq.at(n).eval({x, lambda});
            CHECK(Rational(central_binomial(n)) * v[n] == direct);
            CHECK(u[n] == direct);
        }
    }
}

TEST_CASE("support bounds hold and violations carry witnesses", "[recurrence]") {
    UtildeSeq seq(40);
    const BoundsReport rep = check_bounds(seq, 40);
    CHECK(rep.pass());

    CHECK(check_bounds_entry(seq.at(3), 3).empty());
    CHECK(check_bounds_entry(seq.at(0), 0).empty());

    // adversarial injected term x^2 lambda^2 into a copy of u~_3
    SparsePoly tampered = seq.at(3);
    tampered.add_term(Exponents(2, 2), 1);
    const auto bad = check_bounds_entry(tampered, 3);
    REQUIRE(!bad.empty());
    CHECK(bad.front().r == 2);
    CHECK(bad.front().s == 2);
}

TEST_CASE("parity of x-dependence survives the sign reversal", "[recurrence]") {
    UtildeSeq seq(25);
    for (std::size_t n = 0; n <= 25; ++n) {
        const SparsePoly s = substitute_neg_square(seq.at(n));
        for (const auto& [e, c] : s.terms()) CHECK(e[0] % 2 == 0);
    }
}
