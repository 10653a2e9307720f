#include "doctest.h"

#include "khall/laurent.hpp"

using namespace khall;

namespace {

LaurentPoly var(int nv, int i, int e = 1) {
    std::vector<int> exps(nv, 0);
    exps[i] = e;
    return LaurentPoly::monomial(nv, exps, Rat(1));
}

} // namespace

TEST_CASE("laurent arithmetic") {
    LaurentPoly one = LaurentPoly::constant(2, Rat(1));
    LaurentPoly x = var(2, 0), y = var(2, 1);
    LaurentPoly p = (x + y) * (x - y);
    CHECK(p == x * x - y * y);
    CHECK((p - p).is_zero());
    CHECK(Rat(3) * one + Rat(-3) * one == LaurentPoly(2));

    // Laurent: negative exponents
    LaurentPoly xinv = var(2, 0, -1);
    CHECK(x * xinv == one);
}

TEST_CASE("one_minus builder") {
    // 1 - q * z0/z1 in layout (z0, z1, q)
    std::vector<int> qexp = {0, 0, 1};
    LaurentPoly f = LaurentPoly::one_minus(3, Rat(1), 0, 1, qexp);
    LaurentPoly expect = LaurentPoly::constant(3, Rat(1)) -
                         LaurentPoly::monomial(3, {1, -1, 1}, Rat(1));
    CHECK(f == expect);
}

TEST_CASE("exact division") {
    int nv = 2;
    LaurentPoly x = var(nv, 0), y = var(nv, 1);
    LaurentPoly f = x * x - y * y;
    auto q1 = divide_exact(f, x - y);
    REQUIRE(q1.has_value());
    CHECK(*q1 == x + y);
    CHECK(!divide_exact(x + y, x - y).has_value());

    // division by a Laurent unit
    LaurentPoly unit = LaurentPoly::monomial(nv, {1, -2}, Rat(-3));
    auto q2 = divide_exact(f, unit);
    REQUIRE(q2.has_value());
    CHECK(*q2 * unit == f);

    // multivariate product round trip
    LaurentPoly g = (x + y) * (x + Rat(2) * y) * (x * y - LaurentPoly::constant(nv, Rat(1)));
    auto q3 = divide_exact(g, x + Rat(2) * y);
    REQUIRE(q3.has_value());
    CHECK(*q3 * (x + Rat(2) * y) == g);
}

TEST_CASE("rename and substitute") {
    LaurentPoly x = var(3, 0), y = var(3, 1), q = var(3, 2);
    LaurentPoly p = x * y + q * x;
    LaurentPoly swapped = p.renamed({1, 0, 2}, 3);
    CHECK(swapped == y * x + q * y);

    // substitute q -> q^{-1} keeping three variables
    std::vector<std::vector<int>> images = {
        {1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
    LaurentPoly sub = p.substituted(images, 3);
    CHECK(sub == x * y + var(3, 2, -1) * x);
}
