#include "abmod/qmatrix.hpp"
#include "doctest.h"

using namespace abmod;

TEST_CASE("rank and kernel") {
    QMatrix m(2, 3);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(0, 2) = 3;
    m.at(1, 0) = 2;
    m.at(1, 1) = 4;
    m.at(1, 2) = 6;
    CHECK(m.rank() == 1);
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 2);
    for (const auto& v : k) CHECK(vec_is_zero_rat(m.apply(v)));
}

TEST_CASE("solve_linear") {
    QMatrix m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 1;
    m.at(1, 0) = 1;
    m.at(1, 1) = -1;
    auto sol = solve_linear(m, {Rational(3), Rational(1)});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == 2);
    CHECK((*sol)[1] == 1);

    QMatrix s(2, 1);
    s.at(0, 0) = 1;
    s.at(1, 0) = 1;
    CHECK_FALSE(solve_linear(s, {Rational(0), Rational(1)}).has_value());
}

TEST_CASE("minimal and characteristic polynomials") {
    QMatrix j(3, 3);  // single Jordan block at 2
    for (int i = 0; i < 3; ++i) j.at(i, i) = 2;
    j.at(0, 1) = 1;
    j.at(1, 2) = 1;
    RationalPolynomial mp = minimal_polynomial(j);
    RationalPolynomial cp = characteristic_polynomial(j);
    CHECK(mp == cp);
    CHECK(mp.degree() == 3);
    CHECK(evaluate_poly_at(mp, j).is_zero());

    QMatrix d(3, 3);  // diagonal with a repeated eigenvalue
    d.at(0, 0) = 1;
    d.at(1, 1) = 1;
    d.at(2, 2) = 5;
    CHECK(minimal_polynomial(d).degree() == 2);
    CHECK(characteristic_polynomial(d).degree() == 3);
}

TEST_CASE("matrix arithmetic") {
    QMatrix a = QMatrix::identity(2);
    QMatrix b(2, 2);
    b.at(0, 1) = 1;
    CHECK((a * b) == b);
    CHECK((b - b).is_zero());
    CHECK(b.transposed().at(1, 0) == 1);
}
