#include <algorithm>

#include "abmod/constructors.hpp"
#include "abmod/errors.hpp"
#include "doctest.h"

using namespace abmod;

namespace {

RationalPolynomial poly(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return RationalPolynomial(std::move(c));
}

AbModule make_e2(int trunc = 18) {
    SeriesMatrix a(2, 2, trunc);
    a.set(0, 1, Series::monomial(Rational(1), 2, trunc));
    a.set(1, 0, Series::one(trunc));
    return AbModule(a);
}

}  // namespace

TEST_CASE("e_lambda") {
    AbModule e = e_lambda(make_rational(-1, 2), 12);
    CHECK(e.rank() == 1);
    CHECK(e.a_matrix().at(0, 0) == Series::monomial(make_rational(-1, 2), 1, 12));
}

TEST_CASE("jordan module layout") {
    AbModule j = jordan_module(make_rational(1, 2), 2, 12);
    CHECK(j.a_matrix().at(0, 0) == Series::monomial(make_rational(1, 2), 1, 12));
    CHECK(j.a_matrix().at(0, 1) == Series::monomial(Rational(1), 1, 12));
    CHECK(j.a_matrix().at(1, 1) == Series::monomial(make_rational(1, 2), 1, 12));
    CHECK(j.a_matrix().at(1, 0).is_zero());
    CHECK(jordan_module(make_rational(1, 2), 1, 12) ==
          e_lambda(make_rational(1, 2), 12));
    CHECK_THROWS_AS(jordan_module(Rational(1), 0), Error);
}

TEST_CASE("jordan bernstein is the full power") {
    for (int d : {1, 2, 3}) {
        BernsteinPoly b = bernstein(jordan_module(make_rational(-3, 4), d));
        RationalPolynomial expect = RationalPolynomial::constant(Rational(1));
        for (int i = 0; i < d; ++i) expect = expect * poly({-3, 4}).monic();
        CHECK(b.poly == expect);
    }
}

TEST_CASE("pham spectra") {
    CHECK(pham_spectrum(PhamSpec{{2, 2}}) == std::vector<Rational>{Rational(1)});
    auto s23 = pham_spectrum(PhamSpec{{2, 3}});
    REQUIRE(s23.size() == 2);
    CHECK(s23[0] == make_rational(5, 6));
    CHECK(s23[1] == make_rational(7, 6));
    auto s33 = pham_spectrum(PhamSpec{{3, 3}});
    std::sort(s33.begin(), s33.end());
    CHECK(s33 == std::vector<Rational>{make_rational(2, 3), Rational(1), Rational(1),
                                       make_rational(4, 3)});
}

TEST_CASE("pham modules") {
    AbModule p = pham(PhamSpec{{3, 3}});
    CHECK(p.rank() == 4);
    CHECK(PhamSpec{{3, 3}}.milnor() == 4);
    CHECK(p.is_simple_pole());
    CHECK(bernstein(p).poly == poly({2, 3}).monic() * poly({1, 1}) * poly({4, 3}).monic());
    CHECK(bernstein(pham(PhamSpec{{2, 2}})).poly == poly({1, 1}));
    CHECK(bernstein(pham(PhamSpec{{2, 3}})).poly ==
          poly({5, 6}).monic() * poly({7, 6}).monic());
}

TEST_CASE("pham spectrum symmetry sigma -> n - sigma") {
    for (PhamSpec spec : {PhamSpec{{2, 3}}, PhamSpec{{3, 3}}, PhamSpec{{2, 2, 2}}}) {
        auto s = pham_spectrum(spec);
        std::vector<Rational> reflected;
        for (const auto& v : s) reflected.push_back(Rational(spec.n()) - v);
        std::sort(s.begin(), s.end());
        std::sort(reflected.begin(), reflected.end());
        CHECK(s == reflected);
    }
}

TEST_CASE("submodule closure examples") {
    AbModule e1 = e_lambda(Rational(1), 14);
    SubModuleResult c = submodule_closure(e1, {{Series::one(14)}});
    CHECK(c.full_rank);
    CHECK(c.module == e1);

    // closure of {e1} in the rank-2 module regenerates e2 = a e1
    AbModule e2 = make_e2();
    SubModuleResult c2 =
        submodule_closure(e2, {{Series::one(18), Series::zero(18)}});
    CHECK(c2.full_rank);
    Lattice l = Lattice::from_matrix(c2.inclusion, c2.inclusion_shift);
    CHECK(l == Lattice::standard(2, l.prec()));

    // closure of {b g1, b g2} in the saturation recovers F's minimal polynomial
    SubModuleResult sat = saturate(e2);
    int t = sat.module.trunc();
    SubModuleResult f = submodule_closure(
        sat.module, {{Series::monomial(Rational(1), 1, t), Series::zero(t)},
                     {Series::zero(t), Series::monomial(Rational(1), 1, t)}});
    CHECK(f.full_rank);
    CHECK(minimal_polynomial(-f.module.residue_endomorphism()) == poly({-1, 1, 1}));
}

TEST_CASE("closure reports rank deficiency") {
    AbModule sum = direct_sum(e_lambda(Rational(1), 14), e_lambda(Rational(2), 14));
    SubModuleResult c =
        submodule_closure(sum, {{Series::one(14), Series::zero(14)}});
    CHECK_FALSE(c.full_rank);
    CHECK(c.module.rank() == 1);
}

TEST_CASE("random generators are deterministic and well-behaved") {
    AbModule a = random_regular(2, 42);
    AbModule b = random_regular(2, 42);
    CHECK(a == b);
    CHECK(is_regular(a));
    for (unsigned long seed : {7ul, 8ul, 9ul}) {
        AbModule m = random_simple_pole(3, seed);
        CHECK(m.is_simple_pole());
        CHECK(m == random_simple_pole(3, seed));
    }
    // rank-1 random regular is a shifted E_lambda: bernstein z + lambda + m
    AbModule r1 = random_regular(1, 5);
    BernsteinPoly b1 = bernstein(r1);
    CHECK(b1.poly.degree() == 1);
    REQUIRE(b1.rational_roots.size() == 1);
}

TEST_CASE("direct sum blocks") {
    AbModule s = direct_sum(e_lambda(Rational(1), 12),
                            jordan_module(make_rational(1, 2), 2, 12));
    CHECK(s.rank() == 3);
    CHECK(s.a_matrix().at(0, 0) == Series::monomial(Rational(1), 1, 12));
    CHECK(s.a_matrix().at(1, 2) == Series::monomial(Rational(1), 1, 12));
    CHECK(s.a_matrix().at(0, 1).is_zero());
}
