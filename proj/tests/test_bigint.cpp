#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <triadic/bigint.hpp>
#include <triadic/rational.hpp>

using triadic::BigInt;
using triadic::Rational;

TEST_CASE("construction and printing") {
    CHECK(BigInt(0).to_string() == "0");
    CHECK(BigInt(-1).to_string() == "-1");
    CHECK(BigInt(1234567890123456789LL).to_string() == "1234567890123456789");
    CHECK(BigInt::from_string("-9876543210987654321098765").to_string() ==
          "-9876543210987654321098765");
    CHECK_THROWS_AS(BigInt::from_string("12x"), std::invalid_argument);
    CHECK_THROWS_AS(BigInt::from_string(""), std::invalid_argument);
}

TEST_CASE("arithmetic agrees with native integers") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> dist(-1000000000LL, 1000000000LL);
    for (int i = 0; i < 2000; ++i) {
        long long a = dist(rng), b = dist(rng);
        CHECK((BigInt(a) + BigInt(b)).to_ll() == a + b);
        CHECK((BigInt(a) - BigInt(b)).to_ll() == a - b);
        CHECK((BigInt(a) * BigInt(b)).to_ll() == a * b);
        if (b != 0) {
            auto [q, r] = BigInt::divmod(BigInt(a), BigInt(b));
            CHECK(q.to_ll() == a / b);
            CHECK(r.to_ll() == a % b);
        }
        CHECK(BigInt(a).mod3() == ((a % 3) + 3) % 3);
        CHECK((BigInt(a) < BigInt(b)) == (a < b));
    }
}

TEST_CASE("multi-limb division") {
    BigInt a = BigInt::from_string("123456789012345678901234567890");
    BigInt b = BigInt::from_string("987654321987654321");
    auto [q, r] = BigInt::divmod(a, b);
    CHECK((q * b + r) == a);
    CHECK(r < b);
    CHECK(!r.is_negative());
}

TEST_CASE("power-of-three extraction") {
    auto [k, u] = BigInt::extract_pow3(BigInt(243 * 14));
    CHECK(k == 5);
    CHECK(u.to_ll() == 14);
    CHECK_THROWS_AS(BigInt::extract_pow3(BigInt(0)), std::domain_error);
    CHECK_THROWS_AS(triadic::div3_exact(BigInt(4)), triadic::NonIntegralDivision);
    CHECK(triadic::div3_exact(BigInt(-27)).to_ll() == -9);
}

TEST_CASE("rational normalization") {
    Rational r(BigInt(6), BigInt(-8));
    CHECK(r.numerator().to_ll() == -3);
    CHECK(r.denominator().to_ll() == 4);
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
    CHECK((Rational(1, 2) + Rational(1, 3)) == Rational(5, 6));
    CHECK((Rational(2, 3) * Rational(9, 4)) == Rational(3, 2));
    CHECK(Rational(9, 2).valuation3() == 2);
    CHECK(Rational(1, 3).valuation3() == -1);
    CHECK(Rational(14, 5).valuation3() == 0);
    CHECK(Rational(1, 2).times_pow3(2) == Rational(9, 2));
    CHECK(Rational(1, 2).times_pow3(-1) == Rational(1, 6));
}
