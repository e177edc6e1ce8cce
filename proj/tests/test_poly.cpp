#include "abmod/poly.hpp"
#include "doctest.h"

using namespace abmod;

namespace {

RationalPolynomial poly(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return RationalPolynomial(std::move(c));
}

}  // namespace

TEST_CASE("divmod and gcd") {
    RationalPolynomial p = poly({-1, 0, 1});       // z^2 - 1
    RationalPolynomial d = poly({1, 1});           // z + 1
    auto [q, r] = p.divmod(d);
    CHECK(q == poly({-1, 1}));
    CHECK(r.is_zero());
    CHECK(poly_gcd(p, d) == d.monic());
    CHECK(poly_gcd(poly({1, 1}), poly({2, 1})) == poly({1}));
    CHECK(poly_lcm(poly({1, 1}), poly({2, 1})) == poly({2, 3, 1}));
}

TEST_CASE("compose_affine") {
    RationalPolynomial p = poly({0, 0, 1});  // z^2
    RationalPolynomial q = p.compose_affine(Rational(-1), Rational(-2));
    // (-z-2)^2 = z^2 + 4z + 4
    CHECK(q == poly({4, 4, 1}));
    CHECK(p.compose_affine(Rational(1), Rational(0)) == p);
}

TEST_CASE("squarefree decomposition") {
    // (z+1)^2 (z-2)
    RationalPolynomial p = poly({1, 1}) * poly({1, 1}) * poly({-2, 1});
    auto parts = squarefree_decomposition(p);
    REQUIRE(parts.size() == 2);
    bool saw_linear = false, saw_square = false;
    for (const auto& [f, m] : parts) {
        if (m == 1 && f == poly({-2, 1})) saw_linear = true;
        if (m == 2 && f == poly({1, 1})) saw_square = true;
    }
    CHECK(saw_linear);
    CHECK(saw_square);
}

TEST_CASE("rational roots") {
    // 2(z - 1/2)(z + 3)^2
    RationalPolynomial p =
        (poly({-1, 2}) * poly({3, 1}) * poly({3, 1}));
    auto roots = rational_roots(p);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].first == Rational(-3));
    CHECK(roots[0].second == 2);
    CHECK(roots[1].first == make_rational(1, 2));
    CHECK(roots[1].second == 1);
    CHECK(rational_roots(poly({1, 0, 1})).empty());  // z^2 + 1
}

TEST_CASE("factor splits linear and keeps irreducibles whole") {
    // (z+2/3)(z+1)(z+4/3), scaled to integer coefficients
    RationalPolynomial p = poly({2, 3}) * poly({1, 1}) * poly({4, 3});
    Factorization f = factor(p);
    CHECK(f.complete);
    REQUIRE(f.factors.size() == 3);
    for (const auto& [fac, m] : f.factors) {
        CHECK(fac.degree() == 1);
        CHECK(m == 1);
    }

    Factorization g = factor(poly({-1, -1, 1}));  // z^2 - z - 1, irreducible
    CHECK(g.complete);
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors[0].first == poly({-1, -1, 1}));

    // (z^2+1)(z^2+2): degree-4 Kronecker split
    Factorization h = factor(poly({1, 0, 1}) * poly({2, 0, 1}));
    CHECK(h.complete);
    CHECK(h.factors.size() == 2);
}

TEST_CASE("factor product reassembles the input") {
    RationalPolynomial p = poly({-1, -1, 1}) * poly({1, 1}) * poly({1, 1});
    Factorization f = factor(p);
    RationalPolynomial prod = RationalPolynomial::constant(Rational(1));
    for (const auto& [fac, m] : f.factors)
        for (int i = 0; i < m; ++i) prod = prod * fac;
    CHECK(prod == p.monic());
}

TEST_CASE("evaluate") {
    RationalPolynomial p = poly({-1, -1, 1});
    CHECK(p.evaluate(Rational(2)) == Rational(1));
    CHECK(p.evaluate(make_rational(1, 2)) == make_rational(-5, 4));
}
