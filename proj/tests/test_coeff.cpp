#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lbcalc/coeff.hpp"

using namespace lbc;

TEST_CASE("rational arithmetic reduces") {
    Coeff a(1, 2), b(1, 3);
    CHECK((a + b) == Coeff(5, 6));
    CHECK((a * b) == Coeff(1, 6));
    CHECK((a - a).is_zero());
    CHECK((a / b) == Coeff(3, 2));
}

TEST_CASE("parameter polynomials") {
    Coeff c = Coeff::param("c");
    Coeff k = Coeff::param("k");
    Coeff x = (c + k) * (c - k);
    Coeff y = c * c - k * k;
    CHECK(x == y);
    CHECK(x.str() == "(c^2 - k^2)");
}

TEST_CASE("fractions of polynomials reduce by gcd") {
    Coeff k = Coeff::param("k");
    // (3k^2 + 6k) / (k^2 + 4k + 4) = 3k(k+2) / (k+2)^2 = 3k/(k+2)
    Coeff num = Coeff(3) * k * k + Coeff(6) * k;
    Coeff den = k * k + Coeff(4) * k + Coeff(4);
    Coeff r = num / den;
    Coeff expect = Coeff(3) * k / (k + Coeff(2));
    CHECK(r == expect);
}

TEST_CASE("denominator sign normalization makes equality canonical") {
    Coeff k = Coeff::param("k");
    Coeff a = Coeff(1) / (Coeff(0) - k);
    Coeff b = Coeff(-1) / k;
    CHECK(a == b);
}

TEST_CASE("inverse and division by zero guarded") {
    Coeff k = Coeff::param("k");
    CHECK((k * k.inverse()).is_one());
    CHECK_THROWS(Coeff(1) / Coeff(0));
}

TEST_CASE("substitution of a parameter") {
    Coeff k = Coeff::param("k");
    Coeff c = (Coeff(3) * k) / (k + Coeff(2));
    CHECK(c.substituted("k", Int(1)) == Coeff(1));
    CHECK(c.substituted("k", Int(2)) == Coeff(3, 2));
}

TEST_CASE("multivariate gcd handles shared content") {
    PPoly c = PPoly::param("c"), a = PPoly::param("a");
    PPoly p = (c * a + a * a) * PPoly(Int(4)); // 4a(c+a)
    PPoly q = (c * c - a * a) * PPoly(Int(6)); // 6(c+a)(c-a)
    PPoly g = gcd(p, q);
    CHECK(g == (c + a) * PPoly(Int(2)));
}
