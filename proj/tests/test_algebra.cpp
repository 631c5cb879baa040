#include <catch2/catch_amalgamated.hpp>

#include "trek/algebra.hpp"
#include "trek/constants.hpp"

using namespace trek;

TEST_CASE("rationals are always reduced with positive denominator", "[algebra]") {
    const Rational r = make_rational(6, -4);
    CHECK(num(r) == -3);
    CHECK(den(r) == 2);
    CHECK(parse_rational("6/-4") == make_rational(-3, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(rat_str(Rational(-280)) == "-280/1");
    CHECK(rat_str(make_rational(2, -6)) == "-1/3");
    CHECK_THROWS_AS(make_rational(1, 0), InvalidInput);
}

TEST_CASE("big integer arithmetic is exact at size", "[algebra]") {
    BigInt f = 1;
    for (int i = 1; i <= 40; ++i) f *= i;
    CHECK(f.str() == "815915283247897734345611269596115894272000000000");
    CHECK(exact_divide(f, BigInt(40)) * 40 == f);
    CHECK_THROWS_AS(exact_divide(BigInt(7), BigInt(2)), ExactDivisionFailure);
}

TEST_CASE("binomial coefficients", "[algebra]") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(10, 5) == 252);
    CHECK(binomial(40, 20) == BigInt("137846528820"));
    CHECK(binomial(3, 5) == 0);
}

TEST_CASE("dyadic rounding: nearest multiple of 2^-bits, ties to even", "[algebra]") {
    CHECK(dyadic_round(Rational(1, 3), 8) == Rational(85, 256));
    CHECK(dyadic_round(Rational(1, 2), 0) == 0);    // tie -> even 0
    CHECK(dyadic_round(Rational(3, 2), 0) == 2);    // tie -> even 2
    CHECK(dyadic_round(Rational(5, 4), 1) == 1);    // 2.5 halves -> 2 -> 1
    CHECK(dyadic_round(Rational(7, 4), 1) == 2);    // 3.5 halves -> 4 -> 2
    CHECK(dyadic_round(Rational(-1, 3), 4) == Rational(-5, 16));
    CHECK(dyadic_round(Rational(12345, 1), 16) == Rational(12345));

    // error is at most 2^-(bits+1)
    const Rational x(355, 113);
    for (unsigned b : {4u, 16u, 64u}) {
        const Rational r = dyadic_round(x, b);
        CHECK(boost::multiprecision::abs(r - x) <= Rational(1, BigInt(1) << (b + 1)));
        CHECK(den(r) <= BigInt(1) << b);
    }
}

TEST_CASE("rational parsing accepts p/q, decimals, powers", "[algebra]") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-280") == Rational(-280));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-1.5e-3") == Rational(-3, 2000));
    CHECK(parse_rational("1e-6") == Rational(1, 1000000));
    CHECK(parse_rational("2^-64") == Rational(1, BigInt(1) << 64));
    CHECK(parse_rational("2^10") == Rational(1024));
    CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
    CHECK_THROWS_AS(parse_rational(""), InvalidInput);
}

TEST_CASE("decimal formatting truncates", "[algebra]") {
    CHECK(to_decimal_string(Rational(1, 3), 6) == "0.333333");
    CHECK(to_decimal_string(Rational(-7, 2), 3) == "-3.500");
    CHECK(to_decimal_string(Rational(5), 0) == "5");
}

TEST_CASE("log2 magnitude helper", "[algebra]") {
    CHECK(log2_abs(BigInt(1) << 100) == Catch::Approx(100.0));
    CHECK(log2_abs(Rational(1, BigInt(1) << 50)) == Catch::Approx(-50.0));
    CHECK(std::isinf(log2_abs(Rational(0))));
}

TEST_CASE("pi enclosure from the Machin series", "[constants]") {
    const RationalInterval pi = pi_interval(128);
    CHECK(pi.width() <= Rational(1, BigInt(1) << 128));
    // 50 digits of pi
    const Rational ref = parse_rational("3.14159265358979323846264338327950288419716939937510");
    CHECK(pi.lo <= ref);
    CHECK(ref <= pi.hi);

    const RationalInterval pi2 = pi_squared_interval(96);
    CHECK(pi2.width() <= Rational(1, BigInt(1) << 96));
    CHECK(pi2.contains(parse_rational("9.8696044010893586188344909998761511353136994072408")));
}
