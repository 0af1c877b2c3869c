#include <doctest.h>

#include <functional>

#include "okrank/qobjects.hpp"

using namespace okrank;

namespace {

using IS = Series<Integer>;
using QS = Series<Rational>;

IS from_vector(const std::vector<long>& v, int trunc)
{
    std::vector<Integer> c(trunc + 1, 0);
    for (std::size_t i = 0; i < v.size() && static_cast<int>(i) <= trunc; ++i) {
        c[i] = v[i];
    }
    return IS(0, trunc, c);
}

// Partitions fitting in an m x (n-m) box, counted by weight.
std::vector<long> box_partitions(int parts, int largest)
{
    std::vector<long> out(parts * largest + 1, 0);
    std::function<void(int, int, int)> rec = [&](int left, int cap, int weight) {
        ++out[weight];
        if (left == 0) {
            return;
        }
        for (int p = 1; p <= cap; ++p) {
            rec(left - 1, p, weight + p);
        }
    };
    rec(parts, largest, 0);
    return out;
}

// Bilateral Appell-Lerch numerator, each geometric term expanded by hand.
QS lerch_sum_oracle(SignedMonomial x, SignedMonomial z, int p, int lo, int hi, int trunc)
{
    const int floor_exp = -400;
    std::vector<Rational> acc(trunc - floor_exp + 1, 0);
    const Rational c(x.sign * z.sign);
    for (int n = lo; n <= hi; ++n) {
        const Rational sign((n % 2 == 0 ? 1 : -1) * ((n % 2 == 0 || z.sign == 1) ? 1 : -1));
        const int base = p * n * (n - 1) / 2 + n * z.q_exp;
        const int d = p * (n - 1) + x.q_exp + z.q_exp;
        if (d == 0) {
            if (base <= trunc) {
                acc[base - floor_exp] += sign / (Rational(1) - c);
            }
        } else if (d > 0) {
            Rational pw = 1;
            for (int e = base; e <= trunc; e += d) {
                acc[e - floor_exp] += sign * pw;
                pw *= c;
            }
        } else {
            // 1/(1 - c q^d) = -(1/c) q^{-d} / (1 - (1/c) q^{-d})
            const Rational inv = Rational(1) / c;
            Rational pw = -inv;
            for (int e = base - d; e <= trunc; e -= d) {
                acc[e - floor_exp] += sign * pw;
                pw *= inv;
            }
        }
    }
    return QS(floor_exp, trunc, acc).trimmed();
}

std::vector<Integer> mock_oracle(int trunc, bool chi)
{
    std::vector<Integer> total(trunc + 1, 0);
    for (int n = 0;; ++n) {
        const int lead = chi ? (n + 1) * (n + 1) : n * n;
        if (lead > trunc) {
            break;
        }
        std::vector<Integer> t(trunc + 1, 0);
        t[lead] = (n % 2 == 0) ? 1 : -1;
        const int top = chi ? 2 * n + 1 : 2 * n;
        for (int i = 1; i <= top; ++i) {
            // divide by 1 + q^i
            for (int e = i; e <= trunc; ++e) {
                t[e] -= t[e - i];
            }
        }
        for (int e = 0; e <= trunc; ++e) {
            total[e] += t[e];
        }
    }
    return total;
}

} // namespace

TEST_CASE("finite pochhammer")
{
    CHECK(equal_up_to(poch_finite<Integer>(qmono(1, 1), 2, 10), from_vector({1, -1, -1, 1}, 10), 10));

    const auto p = poch_finite<ZPoly>(qmono(-1, 0, -1), 2, 10);
    const ZPoly one(1);
    const ZPoly ainv = ZPoly::monomial(Integer(1), MarkerExp{0, -1});
    CHECK(p.coeff(0) == one + ainv);
    CHECK(p.coeff(1) == ainv + ZPoly::monomial(Integer(1), MarkerExp{0, -2}));
    CHECK(p.coeff(2) == ZPoly(0));

    const IS lhs = poch_finite<Integer>(qmono(-1, 0), 3, 10);
    const IS rhs = poch_finite<Integer>(qmono(-1, 1), 2, 10).scaled(Integer(2));
    CHECK(equal_up_to(lhs, rhs, 10));

    CHECK_THROWS_AS(poch_finite<Integer>(qmono(1, 1), -1, 10), DomainError);
}

TEST_CASE("negative-length pochhammer inverts the shifted product")
{
    // (x;q)_{-n} (x q^{-n};q)_n = 1
    for (int n = 1; n <= 4; ++n) {
        const QS neg = poch<Rational>(qmono(-1, 3), -n, 20);
        const QS pos = poch_finite<Rational>(qmono(-1, 3 - n), n, 40);
        const QS prod = neg * pos;
        CHECK(equal_up_to(prod, QS::one(prod.trunc_order()), std::min(prod.trunc_order(), 20)));
    }
}

TEST_CASE("infinite pochhammer")
{
    const IS euler = poch_inf<Integer>(qmono(1, 1), 1, 5);
    CHECK(equal_up_to(euler, from_vector({1, -1, -1, 0, 0, 1}, 5), 5));

    const IS odd_even = poch_inf<Integer>(qmono(1, 1), 2, 40) * poch_inf<Integer>(qmono(1, 2), 2, 40);
    CHECK(equal_up_to(poch_inf<Integer>(qmono(1, 1), 1, 40), odd_even, 40));

    // Euler: (-q;q)_inf (q;q^2)_inf = 1
    const IS euler_odd = poch_inf<Integer>(qmono(-1, 1), 1, 40) * poch_inf<Integer>(qmono(1, 1), 2, 40);
    CHECK(equal_up_to(euler_odd, IS::one(40), 40));

    CHECK_THROWS_AS(poch_inf<Integer>(qmono(1, 0), 1, 10), DomainError);
    CHECK_THROWS_AS(poch_inf<Integer>(qmono(1, -3), 3, 10), DomainError);
}

TEST_CASE("gaussian binomials against box partitions")
{
    CHECK(equal_up_to(gauss_binomial<Integer>(2, 1, 10), from_vector({1, 1}, 10), 10));
    CHECK(equal_up_to(gauss_binomial<Integer>(4, 2, 10), from_vector({1, 1, 2, 1, 1}, 10), 10));
    for (int n = 0; n <= 8; ++n) {
        CHECK(equal_up_to(gauss_binomial<Integer>(n, 0, 10), IS::one(10), 10));
    }
    CHECK(gauss_binomial<Integer>(3, 4, 10).is_zero_window());
    CHECK(gauss_binomial<Integer>(3, -1, 10).is_zero_window());

    for (int n = 0; n <= 9; ++n) {
        for (int m = 0; m <= n; ++m) {
            const int deg = m * (n - m);
            const IS g = gauss_binomial<Integer>(n, m, 30);
            CHECK(equal_up_to(g, from_vector(box_partitions(m, n - m), 30), 30));
            CHECK(equal_up_to(g, gauss_binomial<Integer>(n, n - m, 30), 30));
            for (int e = 0; e <= 30; ++e) {
                CHECK(g.coeff(e) >= 0);
                if (e > deg) {
                    CHECK(g.coeff(e) == 0);
                }
                // palindromic
                if (e <= deg) {
                    CHECK(g.coeff(e) == g.coeff(deg - e));
                }
            }
            CHECK(g.coeff(deg) == 1);
        }
    }
}

TEST_CASE("theta function")
{
    CHECK(equal_up_to(jtheta<Integer>(qmono(1, 1), 3, 30), poch_inf<Integer>(qmono(1, 1), 1, 30), 30));

    const IS minus_q = poch_inf<Integer>(qmono(-1, 1), 1, 30);
    const IS rhs = (minus_q * minus_q * poch_inf<Integer>(qmono(1, 1), 1, 30)).scaled(Integer(2));
    CHECK(equal_up_to(jtheta<Integer>(qmono(-1, 0), 1, 30), rhs, 30));

    CHECK(jtheta<Integer>(qmono(1, 4), 5, 10).coeff(0) == 1);

    CHECK_THROWS_AS(jtheta<Integer>(qmono(1, 5), 5, 10), DomainError);
    CHECK_THROWS_AS(jtheta<Integer>(qmono(1, 0), 1, 10), DomainError);
}

TEST_CASE("theta symmetries")
{
    // j(q^p/z; q^p) = j(z; q^p) and j(q^p z; q^p) = -z^{-1} j(z; q^p)
    for (int p = 2; p <= 6; ++p) {
        for (int e = 1; e < p; ++e) {
            for (int s : {1, -1}) {
                const IS j = jtheta<Integer>(qmono(s, e), p, 40);
                CHECK(equal_up_to(j, jtheta<Integer>(qmono(s, p - e), p, 40), 40));
                const IS shifted = jtheta<Integer>(qmono(s, e + p), p, 40);
                CHECK(shifted.min_order() <= -e);
                const IS expect = j.scaled(Integer(-s)).shifted(-e);
                CHECK(equal_up_to(shifted, expect, std::min(shifted.trunc_order(), expect.trunc_order())));
            }
        }
    }
}

TEST_CASE("appell-lerch sums")
{
    const QS m4 = appell_lerch(qmono(-1, 2), qmono(1, 4), 5, 50);
    CHECK(m4.coeff(0) == 1);

    // the difference of two sums is a theta quotient
    const QS m3 = appell_lerch(qmono(-1, 2), qmono(1, 3), 5, 50);
    const QS euler5 = convert_series<Rational>(poch_inf<Integer>(qmono(1, 5), 5, 60));
    const QS num = -(euler5 * euler5 * euler5);
    const QS den = convert_series<Rational>(jtheta<Integer>(qmono(1, 3), 5, 60) * jtheta<Integer>(qmono(-1, 5), 5, 60));
    CHECK(equal_up_to(m3 - m4, num * den.inverse(), 50));

    CHECK_NOTHROW(appell_lerch(qmono(-1, 1), qmono(1, 2), 5, 20));
    CHECK_THROWS_AS(appell_lerch(qmono(1, 1), qmono(1, 4), 5, 20), DomainError);
    CHECK_THROWS_AS(appell_lerch(qmono(1, 1), qmono(1, 5), 5, 20), DomainError);
}

TEST_CASE("appell-lerch certified range matches a wide brute-force sum")
{
    struct Case {
        SignedMonomial x, z;
        int p;
    };
    const std::vector<Case> cases = {
        {qmono(-1, 2), qmono(1, 4), 5}, {qmono(-1, 2), qmono(1, 3), 5}, {qmono(-1, 1), qmono(1, 2), 5},
        {qmono(-1, 0), qmono(-1, 1), 2}, {qmono(1, 1), qmono(-1, 2), 3}, {qmono(-1, -1), qmono(1, 1), 4},
    };
    const int trunc = 30;
    for (const auto& c : cases) {
        const QS m = appell_lerch(c.x, c.z, c.p, trunc);
        const QS sum = lerch_sum_oracle(c.x, c.z, c.p, -25, 25, trunc + 20);
        const QS theta = convert_series<Rational>(jtheta<Integer>(c.z, c.p, trunc + 40));
        const QS oracle = sum * theta.inverse();
        CHECK(equal_up_to(m, oracle, trunc));
    }
}

TEST_CASE("certified ranges")
{
    const auto r = certified_range(QuadraticBound{1, 1, 0}, 10);
    REQUIRE(r.has_value());
    for (long long n = -10; n <= 10; ++n) {
        const bool inside = n >= r->first && n <= r->second;
        CHECK(inside == (QuadraticBound{1, 1, 0}.at(n) <= 10));
    }
    CHECK_FALSE(certified_range(QuadraticBound{1, 0, 11}, 10).has_value());
    CHECK_THROWS_AS(certified_range(QuadraticBound{0, 1, 0}, 10), DomainError);
    const auto half = certified_range(QuadraticBound{2, 0, 0}, 18, 0);
    REQUIRE(half.has_value());
    CHECK(half->first == 0);
    CHECK(half->second == 4);
}

TEST_CASE("tenth-order mock theta functions")
{
    const IS x = mock_X<Integer>(60);
    const IS chi = mock_chi<Integer>(60);
    CHECK(x.coeff(0) == 1);
    CHECK(x.coeff(1) == -1);
    CHECK(chi.coeff(0) == 0);
    CHECK(chi.coeff(1) == 1);

    const auto xo = mock_oracle(60, false);
    const auto co = mock_oracle(60, true);
    for (int n = 0; n <= 60; ++n) {
        CHECK(x.coeff(n) == xo[n]);
        CHECK(chi.coeff(n) == co[n]);
    }
    CHECK_THROWS_AS(mock_X<Integer>(-1), TruncationError);
}

TEST_CASE("bilateral jacobi sums")
{
    // sum (-1)^n q^{p n(n+1)/2} / (1 - z q^{pn}) = (q^p;q^p)^3 / j(z;q^p)
    const std::vector<std::pair<SignedMonomial, int>> cases = {
        {qmono(1, 2), 5}, {qmono(-1, 1), 3}, {qmono(1, 1), 2}, {qmono(-1, 0), 2}, {qmono(1, 3), 7}};
    for (const auto& [z, p] : cases) {
        const QS lhs = jacobi_bilateral_sum(z, p, 40);
        const QS e = convert_series<Rational>(poch_inf<Integer>(qmono(1, p), p, 60));
        const QS rhs = e * e * e * convert_series<Rational>(jtheta<Integer>(z, p, 60)).inverse();
        CHECK(equal_up_to(lhs, rhs, 40));
    }
    CHECK_THROWS_AS(jacobi_bilateral_sum(qmono(1, 5), 5, 20), DomainError);
}
