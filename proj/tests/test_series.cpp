#include <doctest.h>

#include <random>

#include "okrank/qobjects.hpp"
#include "okrank/series.hpp"

using namespace okrank;

namespace {

using IS = Series<Integer>;
using QS = Series<Rational>;

// Euler's pentagonal expansion, written out term by term.
IS pentagonal(int trunc)
{
    std::vector<Integer> c(trunc + 1, 0);
    for (int k = -20; k <= 20; ++k) {
        const int e = k * (3 * k - 1) / 2;
        if (e <= trunc) {
            c[e] += (k % 2 == 0) ? 1 : -1;
        }
    }
    return IS(0, trunc, c);
}

// p(n) by counting partitions with parts <= m.
IS partition_counts(int trunc)
{
    std::vector<Integer> p(trunc + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= trunc; ++part) {
        for (int n = part; n <= trunc; ++n) {
            p[n] += p[n - part];
        }
    }
    return IS(0, trunc, p);
}

IS random_series(std::mt19937& rng, bool unit_lead)
{
    std::uniform_int_distribution<int> len(0, 30);
    std::uniform_int_distribution<int> lo(-3, 3);
    std::uniform_int_distribution<int> val(-5, 5);
    const int min = lo(rng);
    const int trunc = min + len(rng);
    std::vector<Integer> c(trunc - min + 1);
    for (auto& x : c) {
        x = val(rng);
    }
    if (unit_lead) {
        c[0] = (rng() % 2) ? 1 : -1;
    }
    return IS(min, trunc, c);
}

} // namespace

TEST_CASE("monomials")
{
    const IS one = IS::monomial(1, 0, 10);
    CHECK(one.min_order() == 0);
    CHECK(one.trunc_order() == 10);
    CHECK(one.coeff(0) == 1);
    for (int n = 1; n <= 10; ++n) {
        CHECK(one.coeff(n) == 0);
    }

    const IS m = IS::monomial(-1, 3, 5);
    CHECK(m.min_order() == 3);
    CHECK(m.coeff(0) == 0);
    CHECK(m.coeff(3) == -1);
    CHECK(m.coeff(5) == 0);

    const IS laurent = IS::monomial(1, -1, 4);
    CHECK(laurent.min_order() == -1);
    CHECK(laurent.at(-1) == 1);

    CHECK_THROWS_AS(IS::monomial(1, 5, 4), TruncationError);
}

TEST_CASE("addition keeps Laurent terms")
{
    const IS s = IS::monomial(1, -1, 10) + IS::monomial(1, 1, 10);
    CHECK(s.min_order() == -1);
    CHECK(s.coeff(-1) == 1);
    CHECK(s.coeff(0) == 0);
    CHECK(s.coeff(1) == 1);
}

TEST_CASE("telescoping product")
{
    const IS one_minus_q = IS::one(20).mul_binomial(Integer(-1), 1);
    const IS geo = IS::one(20).div_binomial(Integer(-1), 1);
    CHECK(equal_up_to(one_minus_q * geo, IS::one(20), 20));
}

TEST_CASE("euler product times its inverse")
{
    const IS prod = poch_inf<Integer>(qmono(1, 1), 1, 20);
    CHECK(equal_up_to(prod, pentagonal(20), 20));
    CHECK(equal_up_to(prod.inverse(), partition_counts(20), 20));
    CHECK(equal_up_to(pentagonal(20) * partition_counts(20), IS::one(20), 20));
}

TEST_CASE("inversion")
{
    const IS geo = IS::one(15).mul_binomial(Integer(-1), 1).inverse();
    for (int n = 0; n <= 15; ++n) {
        CHECK(geo.coeff(n) == 1);
    }
    CHECK(poch_inf<Integer>(qmono(1, 1), 1, 10).inverse().coeff(4) == 5);

    const IS two_plus_q = IS::monomial(2, 0, 8) + IS::monomial(1, 1, 8);
    CHECK_THROWS_AS(two_plus_q.inverse(), InversionError);
    const QS q_version = QS::monomial(Rational(2), 0, 8) + QS::monomial(Rational(1), 1, 8);
    const QS inv = q_version.inverse();
    CHECK(inv.coeff(0) == Rational(1, 2));
    CHECK(inv.coeff(1) == Rational(-1, 4));
    CHECK(inv.coeff(2) == Rational(1, 8));

    CHECK_THROWS_AS(IS::zero(5).inverse(), InversionError);

    // q^2 (1 + q) inverts to q^{-2} (1 - q + q^2 - ...), known through 10 - 4
    const IS shifted = IS::monomial(1, 2, 10).mul_binomial(Integer(1), 1);
    const IS sinv = shifted.inverse();
    CHECK(sinv.min_order() == -2);
    CHECK(sinv.trunc_order() == 6);
    CHECK(sinv.coeff(-1) == -1);
}

TEST_CASE("coefficient access and comparison")
{
    const IS geo = IS::one(10).div_binomial(Integer(-1), 1);
    CHECK(geo.coeff(7) == 1);
    CHECK_THROWS_AS(geo.at(11), RangeError);
    CHECK_THROWS_AS(geo.coeff(11), RangeError);

    const IS a = IS::one(10).mul_binomial(Integer(-1), 1);
    CHECK(equal_up_to(a, poch_finite<Integer>(qmono(1, 1), 1, 10), 10));

    const IS one60 = IS::one(60);
    const IS bumped = one60 + IS::monomial(1, 50, 60);
    CHECK(equal_up_to(one60, bumped, 40));
    const auto cmp = compare_up_to(one60, bumped, 60);
    REQUIRE_FALSE(cmp.equal());
    CHECK(cmp.mismatch->exponent == 50);
    CHECK(cmp.mismatch->lhs == 0);
    CHECK(cmp.mismatch->rhs == 1);

    CHECK_THROWS_AS(compare_up_to(one60, IS::one(30), 40), RangeError);
}

TEST_CASE("product truncation is the provable order")
{
    // q^3 known to 10 times 1 known to 5: the product is known to min(10 + 0, 5 + 3)
    const IS x = IS::monomial(1, 3, 10);
    const IS y = IS::one(5);
    CHECK((x * y).trunc_order() == 8);
}

TEST_CASE("ring axioms on random series")
{
    std::mt19937 rng(20260419);
    for (int trial = 0; trial < 120; ++trial) {
        const IS a = random_series(rng, false);
        const IS b = random_series(rng, false);
        const IS c = random_series(rng, false);
        const IS ab = a * b;
        const IS ba = b * a;
        CHECK(equal_up_to(ab, ba, std::min(ab.trunc_order(), ba.trunc_order())));

        const IS l = (a * b) * c;
        const IS r = a * (b * c);
        CHECK(equal_up_to(l, r, std::min(l.trunc_order(), r.trunc_order())));

        const IS d1 = a * (b + c);
        const IS d2 = a * b + a * c;
        CHECK(equal_up_to(d1, d2, std::min(d1.trunc_order(), d2.trunc_order())));

        const IS s1 = a + b;
        const IS s2 = b + a;
        CHECK(equal_up_to(s1, s2, s1.trunc_order()));
        CHECK(equal_up_to(a - a, IS::zero(a.trunc_order()), a.trunc_order()));
    }
}

TEST_CASE("series times its inverse is one")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 120; ++trial) {
        const IS s = random_series(rng, true);
        const IS p = s * s.inverse();
        CHECK(p.trunc_order() == s.trunc_order() - s.min_order());
        CHECK(equal_up_to(p, IS::one(p.trunc_order()), p.trunc_order()));
    }
}

TEST_CASE("truncation soundness")
{
    // Two series agreeing through N produce results agreeing through the
    // propagated order, whatever the unknown tail looks like.
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> val(-9, 9);
    for (int trial = 0; trial < 100; ++trial) {
        const IS a = random_series(rng, true);
        const IS b = random_series(rng, false);
        std::vector<Integer> tail(a.coefficients().begin(), a.coefficients().end());
        for (int i = 0; i < 10; ++i) {
            tail.push_back(val(rng));
        }
        const IS a_long(a.min_order(), a.trunc_order() + 10, tail);

        const IS p = a * b;
        CHECK(equal_up_to(p, a_long * b, p.trunc_order()));
        const IS s = a + b;
        CHECK(equal_up_to(s, a_long + b, s.trunc_order()));
        const IS inv = a.inverse();
        CHECK(equal_up_to(inv, a_long.inverse(), inv.trunc_order()));
    }
}

TEST_CASE("marker polynomials")
{
    const ZPoly z = ZPoly::monomial(Integer(1), MarkerExp{1, 0});
    const ZPoly a_inv = ZPoly::monomial(Integer(1), MarkerExp{0, -1});
    const ZPoly p = (ZPoly(1) + a_inv) * (ZPoly(1) + z);
    CHECK(p.size() == 4);
    CHECK(p.coeff(MarkerExp{1, -1}) == 1);
    CHECK((p - p).is_zero());
    CHECK(p.substitute_a(Integer(1)) == ZPoly(2) + z.shifted(MarkerExp{}) * ZPoly(2));

    CHECK(RingTraits<ZPoly>::is_unit(ZPoly::monomial(Integer(-1), MarkerExp{2, 3})));
    CHECK_FALSE(RingTraits<ZPoly>::is_unit(p));
    CHECK(RingTraits<ZPoly>::inverse(ZPoly::monomial(Integer(-1), MarkerExp{2, 3})) ==
          ZPoly::monomial(Integer(-1), MarkerExp{-2, -3}));

    // 1/(1 - z q) to order 6 has coefficient z^n at q^n
    const auto s = Series<ZPoly>::one(6).div_binomial(-z, 1);
    for (int n = 0; n <= 6; ++n) {
        CHECK(s.coeff(n) == ZPoly::monomial(Integer(1), MarkerExp{n, 0}));
    }
}

TEST_CASE("ring conversion")
{
    const IS e = poch_inf<Integer>(qmono(1, 1), 1, 10);
    const auto q = convert_series<Rational>(e);
    const auto zp = convert_series<ZPoly>(e);
    const auto qp = convert_series<QPoly>(zp);
    for (int n = 0; n <= 10; ++n) {
        CHECK(q.coeff(n) == Rational(e.coeff(n)));
        CHECK(zp.coeff(n) == ZPoly(e.coeff(n)));
        CHECK(qp.coeff(n) == QPoly(Rational(e.coeff(n))));
    }
}
