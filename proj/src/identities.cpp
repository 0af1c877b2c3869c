#include "okrank/identities.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>

#include "okrank/counting.hpp"
#include "okrank/qobjects.hpp"

namespace okrank {

std::string to_string(Ring r) { return r == Ring::integer ? "integer" : "rational"; }

namespace {

using ZS = Series<ZPoly>;
using PS = Series<QPoly>;
using QS = Series<Rational>;

ZPoly zmono(long c, int z, int a = 0) { return ZPoly::monomial(Integer(c), MarkerExp{z, a}); }

// c q^e, or the zero series when e lies above the truncation order.
ZS zterm(const ZPoly& c, int e, int trunc) { return e > trunc ? ZS::zero(trunc) : ZS::monomial(c, e, trunc); }

PS lift(const QS& s) { return convert_series<QPoly>(s); }

// a = 1 in a series carrying only the a marker.
QS at_a_one(const ZS& s)
{
    return s.map([](const ZPoly& p) {
        const ZPoly r = p.substitute_a(Integer(1));
        if (!r.is_constant()) {
            throw DomainError("a = 1 specialization left a z marker behind");
        }
        return Rational(r.coeff(MarkerExp{}));
    });
}

ZS table_series(const RankTable& t, int trunc)
{
    std::vector<std::vector<ZPoly::Term>> raw(trunc + 1);
    for (const auto& [key, c] : t.entries) {
        if (key.n <= trunc) {
            raw[key.n].emplace_back(MarkerExp{key.m, key.j}, Integer(static_cast<long>(c)));
        }
    }
    std::vector<ZPoly> coeffs;
    coeffs.reserve(trunc + 1);
    for (auto& r : raw) {
        coeffs.push_back(ZPoly::from_terms(std::move(r)));
    }
    return ZS(0, trunc, std::move(coeffs));
}

ZS gf_vs_enum(Stat stat, Method method, int k, int trunc)
{
    return table_series(rank_table(stat, method, std::max(trunc, 1), k), trunc);
}

ZPoly sign_a(int n, int a_exp) { return zmono(n % 2 == 0 ? 1 : -1, 0, a_exp); }

// (-1/a;q)_n / (-aq;q)_n, known through trunc
ZS overline_ratio(int n, int trunc) { return poch_ratio<ZPoly>(qmono(-1, 0, -1), qmono(-1, 1, 1), n, trunc); }

// Divides by (zq;q)_n (z^{-1}q;q)_n.
ZS div_zpair(ZS s, int n)
{
    const ZPoly mz = zmono(-1, 1);
    const ZPoly mzi = zmono(-1, -1);
    for (int i = 1; i <= n; ++i) {
        s = s.div_binomial(mz, i).div_binomial(mzi, i);
    }
    return s;
}

ZS div_q_poch(ZS s, int n)
{
    for (int i = 1; i <= n; ++i) {
        s = s.div_binomial(ZPoly(-1), i);
    }
    return s;
}

// Full (z, a) generating function assembled from the one-sided geometric sums in z.
ZS kgen_bivariate(int k, int trunc)
{
    const ZPoly mz = zmono(-1, 1);
    const ZPoly mzi = zmono(-1, -1);
    ZS sum = ZS::zero(trunc);
    for (int n = 1; (k - 1) * n * n <= trunc; ++n) {
        const ZS inner = nbark_inner_term(k, n, trunc);
        sum += inner.div_binomial(mz, n);
        if (inner.valuation() + n <= trunc) {
            sum += inner.scaled(zmono(1, -1)).shifted(n).truncated(trunc).div_binomial(mzi, n);
        }
    }
    return (sum * overpartition_prefactor(trunc)).truncated(trunc);
}

// 1 + sum_{n>=1} (-1)^n a^n q^{(k-1)n^2+n} (1+q^n) ratio_n (1-z)(1-z^{-1}) / ((1-zq^n)(1-z^{-1}q^n))
ZS kfold_unilateral_z(int k, int trunc)
{
    const ZPoly zfactor = ZPoly(2) - zmono(1, 1) - zmono(1, -1);
    ZS acc = ZS::one(trunc);
    for (int n = 1; (k - 1) * n * n + n <= trunc; ++n) {
        const int e = (k - 1) * n * n + n;
        ZS t = overline_ratio(n, trunc - e).scaled(sign_a(n, n) * zfactor).shifted(e).mul_binomial(ZPoly(1), n);
        acc += t.truncated(trunc).div_binomial(zmono(-1, 1), n).div_binomial(zmono(-1, -1), n);
    }
    return acc;
}

// The same sum in the free variables m_1..m_{k-1} before re-indexing by partial sums.
ZS kfold_free_sum(int k, int trunc)
{
    const int vars = k - 1;
    ZS total = ZS::zero(trunc);
    std::vector<int> m(vars, 0);
    // partial sums S_r = m_1 + ... + m_r; exponent = (S_K + 1 choose 2) + S_1^2 + ... + S_{K-1}^2
    auto rec = [&](auto&& self, int r, int partial, int squares) -> void {
        if (r == vars) {
            const int big = partial;
            const int e = big * (big + 1) / 2 + squares;
            if (e > trunc) {
                return;
            }
            ZS t = poch_finite<ZPoly>(qmono(-1, 0, -1), big, trunc - e).scaled(zmono(1, 0, big)).shifted(e);
            for (int i = 1; i < vars; ++i) {
                t = div_q_poch(std::move(t), m[i]);
            }
            total += div_zpair(std::move(t), m[0]);
            return;
        }
        for (int v = 0;; ++v) {
            const int s = partial + v;
            const int sq = (r < vars - 1) ? squares + s * s : squares;
            if (s * (s + 1) / 2 + sq > trunc) {
                break;
            }
            m[r] = v;
            self(self, r + 1, s, sq);
        }
    };
    rec(rec, 0, 0, 0);
    const ZS pre = convert_series<ZPoly>(poch_inf<Integer>(qmono(1, 1), 1, trunc)) *
                   poch_inf<ZPoly>(qmono(-1, 1, 1), 1, trunc).inverse();
    return (total * pre).truncated(trunc);
}

// (-aq;q)_inf/(q;q)_inf (1 + sum_{n>=1} (-1)^n a^n q^{(k-1)n^2} (1+q^n) ratio_n)
ZS kfold_unilateral(int k, int trunc)
{
    ZS acc = ZS::one(trunc);
    for (int n = 1; (k - 1) * n * n <= trunc; ++n) {
        const int e = (k - 1) * n * n;
        acc += overline_ratio(n, trunc - e).scaled(sign_a(n, n)).shifted(e).mul_binomial(ZPoly(1), n).truncated(trunc);
    }
    return (acc * overpartition_prefactor(trunc)).truncated(trunc);
}

ZS garvan_lemma_lhs(int n, int trunc)
{
    const ZPoly zfactor = ZPoly(2) - zmono(1, 1) - zmono(1, -1);
    return zterm(zfactor, n, trunc).div_binomial(zmono(-1, 1), n).div_binomial(zmono(-1, -1), n);
}

ZS garvan_lemma_rhs(int n, int trunc)
{
    ZS geo = ZS::zero(trunc);
    for (int m = 0; m * n <= trunc; ++m) {
        geo += ZS::monomial(zmono(1, m), m * n, trunc);
        if (m >= 1) {
            geo += ZS::monomial(zmono(1, -m), m * n, trunc);
        }
    }
    const ZS ratio = ZS::one(trunc).mul_binomial(ZPoly(-1), n).div_binomial(ZPoly(1), n);
    return ZS::one(trunc) - ratio * geo;
}

// Rational-ring building blocks for the mock theta chain.

QS pinf(int sign, int e, int base, int trunc) { return poch_inf<Rational>(qmono(sign, e), base, trunc); }
QS jt(int sign, int e, int base, int trunc) { return jtheta<Rational>(qmono(sign, e), base, trunc); }
QS alm(int xs, int xe, int zs, int ze, int base, int trunc)
{
    return appell_lerch(qmono(xs, xe), qmono(zs, ze), base, trunc);
}

// 2 (-q;q)_inf / (q;q)_inf
QS two_over_prefactor(int trunc)
{
    return (pinf(-1, 1, 1, trunc) * pinf(1, 1, 1, trunc).inverse()).scaled(Rational(2)).truncated(trunc);
}

QS self_conjugate_a1(int trunc)
{
    return at_a_one(successive_durfee_multisum({2, LastFactor::qsquared, 0, 0}, trunc));
}

// sum_n (-1)^n q^{(5n^2 + (2c-5)n)/2} / (1 + q^{5n})
QS five_sum(int c, int trunc)
{
    auto term = [c](int n, int t) {
        const int e = (5 * n * n + (2 * c - 5) * n) / 2;
        return geometric_term<Rational>(Rational(n % 2 == 0 ? 1 : -1), e, Rational(-1), 5 * n, t);
    };
    return certified_sum<Rational>(QuadraticBound{5, 2LL * c - 15, 0}, trunc, term);
}

// sum_n (-1)^n q^{(5n^2+n)/2} (1 - q^n + q^{2n} - q^{3n} + q^{4n}) / (1 + q^{5n})
QS dissected_sum(int trunc)
{
    auto term = [](int n, int t) {
        const int e = (5 * n * n + n) / 2;
        QS acc = QS::zero(t);
        for (int j = 0; j <= 4; ++j) {
            const int sign = ((n + j) % 2 == 0) ? 1 : -1;
            acc += geometric_term<Rational>(Rational(sign), e + j * n, Rational(-1), 5 * n, t);
        }
        return acc;
    };
    return certified_sum<Rational>(QuadraticBound{5, -1, 0}, trunc, term);
}

QS three_sum_rhs(int trunc)
{
    const QS inner = (jt(1, 3, 5, trunc) * alm(-1, 2, 1, 3, 5, trunc)).scaled(Rational(2)) -
                     (jt(1, 4, 5, trunc) * alm(-1, 1, 1, 4, 5, trunc)).scaled(Rational(2)) +
                     pinf(1, 5, 5, trunc) * pinf(1, 5, 5, trunc) * pinf(1, 5, 5, trunc) * jt(-1, 0, 5, trunc).inverse();
    return two_over_prefactor(trunc) * inner;
}

QS tenord_x_rhs(int trunc)
{
    return alm(-1, 2, 1, 4, 5, trunc).scaled(Rational(2)) -
           jt(1, 3, 10, trunc) * jt(1, 5, 10, trunc) * jt(1, 1, 5, trunc).inverse();
}

QS tenord_chi_rhs(int trunc)
{
    return alm(-1, 1, 1, 2, 5, trunc).scaled(Rational(2)) +
           (jt(1, 1, 10, trunc) * jt(1, 5, 10, trunc) * jt(1, 2, 5, trunc).inverse()).shifted(1);
}

struct MmInstance {
    SignedMonomial x, z0, z1;
    int base;
};

QS mm_lhs(const MmInstance& p, int trunc)
{
    return appell_lerch(p.x, p.z1, p.base, trunc) - appell_lerch(p.x, p.z0, p.base, trunc);
}

QS mm_rhs(const MmInstance& p, int trunc)
{
    auto j = [&](SignedMonomial z) { return jtheta<Rational>(z, p.base, trunc); };
    const QS cube = pinf(1, p.base, p.base, trunc) * pinf(1, p.base, p.base, trunc) * pinf(1, p.base, p.base, trunc);
    const QS num = cube * j(p.z1 / p.z0) * j(p.x * p.z0 * p.z1);
    const QS den = j(p.z0) * j(p.z1) * j(p.x * p.z0) * j(p.x * p.z1);
    return (num * den.inverse()).scaled(Rational(p.z0.sign)).shifted(p.z0.q_exp);
}

QS eqmock_rhs(int trunc)
{
    const QS mq = pinf(-1, 1, 1, trunc);
    const QS x_part = mq * mock_X<Rational>(trunc) * (pinf(1, 1, 5, trunc) * pinf(1, 4, 5, trunc)).inverse();
    const QS chi_part = mq * mock_chi<Rational>(trunc) * (pinf(1, 2, 5, trunc) * pinf(1, 3, 5, trunc)).inverse();
    return x_part.scaled(Rational(2)) - chi_part.scaled(Rational(2)) - pinf(1, 1, 1, trunc) * mq.inverse();
}

QS bracket_lhs(int trunc)
{
    const QS j5 = jt(1, 5, 10, trunc);
    const QS cube = pinf(1, 5, 5, trunc) * pinf(1, 5, 5, trunc) * pinf(1, 5, 5, trunc);
    return jt(1, 3, 5, trunc) * jt(1, 3, 10, trunc) * j5 * jt(1, 1, 5, trunc).inverse() +
           (jt(1, 4, 5, trunc) * jt(1, 1, 10, trunc) * j5 * jt(1, 2, 5, trunc).inverse()).shifted(1) -
           (cube * jt(-1, 0, 5, trunc).inverse()).scaled(Rational(3));
}

QS bracket_rhs(int trunc)
{
    const QS e = pinf(1, 1, 1, trunc);
    const QS mq = pinf(-1, 1, 1, trunc);
    return (e * e * (mq * mq).inverse()).scaled(Rational(-1, 2));
}

// sum_n (-1)^n q^{base (n+1 choose 2)} / (1 - z q^{base n}) against (q^base;q^base)^3 / j(z;q^base)
std::pair<QS, QS> jacobi_sides(SignedMonomial z, int base, int trunc)
{
    const QS e = pinf(1, base, base, trunc);
    return {jacobi_bilateral_sum(z, base, trunc), e * e * e * jtheta<Rational>(z, base, trunc).inverse()};
}

IdentityCase integer_case(std::string id, std::string markers, int order, std::string anchor,
                          std::function<ZS(int)> lhs, std::function<ZS(int)> rhs)
{
    return {std::move(id), Ring::integer, std::move(markers), order, std::move(anchor),
            [lhs](int t) { return AnySeries(lhs(t)); }, [rhs](int t) { return AnySeries(rhs(t)); }};
}

IdentityCase rational_case(std::string id, int order, std::string anchor, std::function<QS(int)> lhs,
                           std::function<QS(int)> rhs)
{
    return {std::move(id), Ring::rational, "", order, std::move(anchor),
            [lhs](int t) { return AnySeries(lift(lhs(t))); }, [rhs](int t) { return AnySeries(lift(rhs(t))); }};
}

std::vector<IdentityCase> build_registry()
{
    std::vector<IdentityCase> r;

    r.push_back(integer_case(
        "dyson-rank-gf", "z", 40,
        "sum_n N(m,n) q^n = 1/(q;q)_inf sum_{n>=1} (-1)^{n-1} q^{n(3n-1)/2+|m|n} (1-q^n), against rank enumeration",
        [](int t) { return gf_vs_enum(Stat::N, Method::gf, 0, t); },
        [](int t) { return gf_vs_enum(Stat::N, Method::enumeration, 0, t); }));
    r.push_back(integer_case(
        "crank-gf", "z", 40,
        "sum_n M(m,n) q^n = 1/(q;q)_inf sum_{n>=1} (-1)^{n-1} q^{n(n-1)/2+|m|n} (1-q^n), against crank enumeration "
        "plus the weight-one correction (z - 1) q",
        [](int t) { return gf_vs_enum(Stat::M, Method::gf, 0, t); },
        [](int t) {
            return gf_vs_enum(Stat::M, Method::enumeration, 0, t) + zterm(zmono(1, 1) - ZPoly(1), 1, t);
        }));
    for (int k = 2; k <= 5; ++k) {
        r.push_back(integer_case(
            "nk-gf-k" + std::to_string(k), "z", 25,
            "sum_n N_k(m,n) q^n = 1/(q;q)_inf sum_{n>=1} (-1)^{n-1} q^{n((2k-1)n-1)/2+|m|n} (1-q^n), against k-rank "
            "enumeration over partitions with at least k-1 successive Durfee squares, k = " + std::to_string(k),
            [k](int t) { return gf_vs_enum(Stat::Nk, Method::gf, k, t); },
            [k](int t) { return gf_vs_enum(Stat::Nk, Method::enumeration, k, t); }));
    }
    r.push_back(integer_case(
        "op2-gf", "z", 20,
        "sum_n Nbar(m,n) q^n = 2 (-q;q)_inf/(q;q)_inf sum_{n>=1} (-1)^{n-1} q^{n^2+|m|n} (1-q^n)/(1+q^n), against "
        "D-rank enumeration",
        [](int t) { return gf_vs_enum(Stat::Nbar, Method::gf, 0, t); },
        [](int t) { return gf_vs_enum(Stat::Nbar, Method::enumeration, 0, t); }));
    for (int k = 2; k <= 4; ++k) {
        r.push_back(integer_case(
            "kgen-vs-multisum-k" + std::to_string(k), "za", 40,
            "sum_{m,n,j} Nbar_k(m,n,j) z^m a^j q^n from the single-sum generating function equals the multisum over "
            "n_1 >= ... >= n_{k-1} >= 1 with final factor 1/((zq;q)_{n_{k-1}} (q/z;q)_{n_{k-1}}), k = " +
                std::to_string(k),
            [k](int t) { return kgen_bivariate(k, t); },
            [k](int t) { return successive_durfee_multisum({k - 1, LastFactor::zpair, 1, 0}, t); }));
    }
    for (int k = 3; k <= 4; ++k) {
        const std::string ks = std::to_string(k);
        r.push_back(integer_case(
            "kfold1-k" + ks, "za", 30,
            "1 + sum_{n>=1} (-1)^n a^n (-1/a;q)_n q^{(k-1)n^2+n} (1+q^n)(1-z)(1-1/z) / ((-aq;q)_n (1-zq^n)(1-q^n/z)) "
            "= (q;q)_inf/(-aq;q)_inf times the free multisum over m_1..m_{k-1}, k = " + ks,
            [k](int t) { return kfold_unilateral_z(k, t); }, [k](int t) { return kfold_free_sum(k, t); }));
        r.push_back(integer_case(
            "kfold2-k" + ks, "za", 30,
            "(-aq;q)_inf/(q;q)_inf times the z-unilateral sum equals the multisum over n_1 >= ... >= n_{k-1} >= 0 with "
            "final factor 1/((zq;q)_{n_{k-1}} (q/z;q)_{n_{k-1}}), k = " + ks,
            [k](int t) { return (overpartition_prefactor(t) * kfold_unilateral_z(k, t)).truncated(t); },
            [k](int t) { return successive_durfee_multisum({k - 1, LastFactor::zpair, 0, 0}, t); }));
        r.push_back(integer_case(
            "kfold4-k" + ks, "a", 30,
            "(-aq;q)_inf/(q;q)_inf (1 + sum_{n>=1} (-1)^n a^n q^{(k-1)n^2} (1+q^n) (-1/a;q)_n/(-aq;q)_n) equals the "
            "multisum over n_1 >= ... >= n_{k-2} >= 0 with final factor 1/(q;q)_{n_{k-2}}, k = " + ks,
            [k](int t) { return kfold_unilateral(k, t); },
            [k](int t) { return successive_durfee_multisum({k - 2, LastFactor::q, 0, 0}, t); }));
    }
    for (int n = 1; n <= 8; ++n) {
        r.push_back(integer_case(
            "garvan-lemma36-n" + std::to_string(n), "z", 40,
            "q^n (1-z)(1-1/z) / ((1-zq^n)(1-q^n/z)) = 1 - (1-q^n)/(1+q^n) (sum_{m>=0} z^m q^{mn} + sum_{m>=1} "
            "z^{-m} q^{mn}), n = " + std::to_string(n),
            [n](int t) { return garvan_lemma_lhs(n, t); }, [n](int t) { return garvan_lemma_rhs(n, t); }));
    }
    // k - 1 in {2, 3} with i = k - 1: the bilateral sum with exponent (k-1)n^2 + n
    for (int big_k = 2; big_k <= 3; ++big_k) {
        for (int i = 1; i <= big_k; ++i) {
            const std::string id = i == big_k ? "corteel-mallet-spec-k" + std::to_string(big_k)
                                              : "corteel-mallet-k" + std::to_string(big_k) + "-i" + std::to_string(i);
            r.push_back(integer_case(
                id, "a", 40,
                "(-aq;q)_inf/(q;q)_inf sum_n (-1)^n a^n q^{Kn^2+(K-i+1)n} (-1/a;q)_n/(-aq;q)_n equals the multisum over "
                "n_1 >= ... >= n_{K-1} >= 0 with linear term n_i + ... + n_{K-1}, K = " + std::to_string(big_k) +
                    ", i = " + std::to_string(i),
                [big_k, i](int t) {
                    return overpartition_bilateral(QuadraticBound{2LL * big_k, 2LL * (big_k - i + 1), 0}, t);
                },
                [big_k, i](int t) { return successive_durfee_multisum({big_k - 1, LastFactor::q, 0, i}, t); }));
        }
    }
    for (int k = 2; k <= 4; ++k) {
        r.push_back(integer_case(
            "skcon-k" + std::to_string(k), "a", 40,
            "self-k-conjugate multisum with final factor 1/(q^2;q^2)_{n_{k-1}} equals (-aq;q)_inf/(q;q)_inf sum_n "
            "(-1/a;q)_n (-1)^n a^n q^{(k-1)n^2 + (n+1 choose 2)} / (-aq;q)_n, k = " + std::to_string(k),
            [k](int t) { return self_conjugate_series(k, Side::lhs, t); },
            [k](int t) { return self_conjugate_series(k, Side::rhs, t); }));
    }
    r.push_back(rational_case(
        "twocm1-step1", 60,
        "self-3-conjugate multisum at a = 1 equals 2(-q;q)_inf/(q;q)_inf sum_n (-1)^n q^{5(n choose 2)+3n} "
        "(1-q^n+q^{2n}-q^{3n}+q^{4n}) / (1+q^{5n})",
        self_conjugate_a1, [](int t) { return two_over_prefactor(t) * dissected_sum(t); }));
    r.push_back(rational_case(
        "twocm1-step2", 60, "S(3) - S(4) + S(5) - S(6) + S(7) = 2 S(3) - 2 S(4) + S(5) inside the prefactor, with "
                            "S(c) = sum_n (-1)^n q^{5(n choose 2)+cn}/(1+q^{5n})",
        [](int t) {
            return two_over_prefactor(t) *
                   (five_sum(3, t) - five_sum(4, t) + five_sum(5, t) - five_sum(6, t) + five_sum(7, t));
        },
        [](int t) {
            return two_over_prefactor(t) *
                   (five_sum(3, t).scaled(Rational(2)) - five_sum(4, t).scaled(Rational(2)) + five_sum(5, t));
        }));
    r.push_back(rational_case(
        "twocm1-step3", 60,
        "2 S(3) - 2 S(4) + S(5) = 2 j(q^3;q^5) m(-q^2,q^5,q^3) - 2 j(q^4;q^5) m(-q,q^5,q^4) + (q^5;q^5)^3/j(-1;q^5), "
        "inside the prefactor",
        [](int t) {
            return two_over_prefactor(t) *
                   (five_sum(3, t).scaled(Rational(2)) - five_sum(4, t).scaled(Rational(2)) + five_sum(5, t));
        },
        three_sum_rhs));
    const std::vector<std::tuple<std::string, SignedMonomial, int>> jacobi = {
        {"jacobi-bilateral", qmono(-1, 0), 5},       {"jacobi-bilateral-b5-q", qmono(1, 1), 5},
        {"jacobi-bilateral-b5-q2", qmono(1, 2), 5},  {"jacobi-bilateral-b5-mq", qmono(-1, 1), 5},
        {"jacobi-bilateral-b1-mq", qmono(-1, 1), 1}, {"jacobi-bilateral-b1-m1", qmono(-1, 0), 1},
        {"jacobi-bilateral-b1-mq2", qmono(-1, 2), 1},
    };
    for (const auto& [id, z, base] : jacobi) {
        r.push_back(rational_case(
            id, 60,
            "sum_n (-1)^n q^{p(n+1 choose 2)} / (1 - z q^{pn}) = (q^p;q^p)_inf^3 / j(z;q^p), z = " + z.to_string() +
                ", p = " + std::to_string(base),
            [z, base](int t) { return jacobi_sides(z, base, t).first; },
            [z, base](int t) { return jacobi_sides(z, base, t).second; }));
    }
    r.push_back(rational_case("tenord-X", 60, "X(q) = 2 m(-q^2,q^5,q^4) - j(q^3;q^10) j(q^5;q^10) / j(q;q^5)",
                              [](int t) { return mock_X<Rational>(t); }, tenord_x_rhs));
    r.push_back(rational_case("tenord-chi", 60, "chi(q) = 2 m(-q,q^5,q^2) + q j(q;q^10) j(q^5;q^10) / j(q^2;q^5)",
                              [](int t) { return mock_chi<Rational>(t); }, tenord_chi_rhs));
    const std::vector<std::pair<std::string, MmInstance>> mm = {
        {"mmtrans-inst1", {qmono(-1, 2), qmono(1, 3), qmono(1, 4), 5}},
        {"mmtrans-inst2", {qmono(-1, 1), qmono(1, 2), qmono(1, 4), 5}},
        {"mmtrans-inst3", {qmono(1, 1), qmono(1, 2), qmono(-1, 3), 7}},
    };
    for (const auto& [id, p] : mm) {
        r.push_back(rational_case(
            id, 60,
            "m(x,q^p,z1) - m(x,q^p,z0) = z0 (q^p;q^p)^3 j(z1/z0) j(x z0 z1) / (j(z0) j(z1) j(x z0) j(x z1)), x = " +
                p.x.to_string() + ", p = " + std::to_string(p.base) + ", z0 = " + p.z0.to_string() +
                ", z1 = " + p.z1.to_string(),
            [p](int t) { return mm_lhs(p, t); }, [p](int t) { return mm_rhs(p, t); }));
    }
    r.push_back(rational_case(
        "mdif1", 60, "m(-q^2,q^5,q^3) - m(-q^2,q^5,q^4) = -(q^5;q^5)^3 / (j(q^3;q^5) j(-q^5;q^5))",
        [](int t) { return alm(-1, 2, 1, 3, 5, t) - alm(-1, 2, 1, 4, 5, t); },
        [](int t) {
            const QS c = pinf(1, 5, 5, t);
            return (c * c * c * (jt(1, 3, 5, t) * jt(-1, 5, 5, t)).inverse()).scaled(Rational(-1));
        }));
    r.push_back(rational_case(
        "mdif2", 60, "m(-q,q^5,q^4) - m(-q,q^5,q^2) = (q^5;q^5)^3 / (j(q^4;q^5) j(-q^5;q^5))",
        [](int t) { return alm(-1, 1, 1, 4, 5, t) - alm(-1, 1, 1, 2, 5, t); },
        [](int t) {
            const QS c = pinf(1, 5, 5, t);
            return c * c * c * (jt(1, 4, 5, t) * jt(-1, 5, 5, t)).inverse();
        }));
    r.push_back(rational_case(
        "eqmock", 60,
        "sum_{n1>=n2>=0} (-1;q)_{n1} q^{(n1+1 choose 2)+n2^2} / ((q;q)_{n1-n2} (q^2;q^2)_{n2}) = 2(-q;q)_inf X(q) / "
        "((q;q^5)_inf (q^4;q^5)_inf) - 2(-q;q)_inf chi(q) / ((q^2;q^5)_inf (q^3;q^5)_inf) - (q;q)_inf/(-q;q)_inf",
        self_conjugate_a1, eqmock_rhs));
    r.push_back(rational_case(
        "bracket-modular", 60,
        "j(q^3;q^5) j(q^3;q^10) j(q^5;q^10) / j(q;q^5) + q j(q^4;q^5) j(q;q^10) j(q^5;q^10) / j(q^2;q^5) - "
        "3 (q^5;q^5)^3 / j(-1;q^5) = -(q;q)_inf^2 / (2 (-q;q)_inf^2)",
        bracket_lhs, bracket_rhs));
    return r;
}

// Builds one side to at least `order`, widening the working order when
// division by a series with positive valuation eats into it.
AnySeries build_side(const IdentityCase& c, bool left, int order)
{
    const auto& f = left ? c.lhs : c.rhs;
    int work = order;
    for (int attempt = 0; attempt < 8; ++attempt) {
        AnySeries s = f(work);
        const int t = std::visit([](const auto& x) { return x.trunc_order(); }, s);
        if (t >= order) {
            return s;
        }
        work += order - t;
    }
    throw TruncationError(c.id + ": could not reach order " + std::to_string(order));
}

template <class P>
std::optional<MismatchReport> compare_sides(const Series<P>& lhs, const Series<P>& rhs, int order)
{
    const auto cmp = compare_up_to(lhs, rhs, order);
    if (cmp.equal()) {
        return std::nullopt;
    }
    const auto& mm = *cmp.mismatch;
    std::map<std::pair<int, int>, std::pair<typename P::Scalar, typename P::Scalar>> diff;
    for (const auto& [e, c] : mm.lhs.terms()) {
        diff[{e.z, e.a}].first = c;
    }
    for (const auto& [e, c] : mm.rhs.terms()) {
        diff[{e.z, e.a}].second = c;
    }
    for (const auto& [key, vals] : diff) {
        if (vals.first != vals.second) {
            return MismatchReport{mm.exponent, key.first, key.second, vals.first.get_str(), vals.second.get_str()};
        }
    }
    throw Error("series compared unequal but no marker term differs");
}

} // namespace

nlohmann::json to_json(const VerificationReport& r)
{
    nlohmann::json j = {{"id", r.id}, {"order", r.order}, {"outcome", r.equal() ? "equal" : "mismatch"}};
    if (r.mismatch) {
        j["mismatch"] = {{"q_exp", r.mismatch->q_exp},
                         {"z_exp", r.mismatch->z_exp},
                         {"a_exp", r.mismatch->a_exp},
                         {"lhs", r.mismatch->lhs},
                         {"rhs", r.mismatch->rhs}};
    }
    j["ms"] = std::round(r.ms * 10) / 10;
    return j;
}

const std::vector<IdentityCase>& identity_registry()
{
    static const std::vector<IdentityCase> registry = build_registry();
    return registry;
}

std::vector<std::string> list_identities()
{
    std::vector<std::string> ids;
    for (const auto& c : identity_registry()) {
        ids.push_back(c.id);
    }
    return ids;
}

const IdentityCase& find_identity(const std::string& id)
{
    for (const auto& c : identity_registry()) {
        if (c.id == id) {
            return c;
        }
    }
    throw UsageError("unknown identity '" + id + "'");
}

VerificationReport verify(const std::string& id, const VerifyOptions& opts)
{
    const IdentityCase& c = find_identity(id);
    const int order = opts.order.value_or(c.default_order);
    if (order < 0) {
        throw UsageError("order must be non-negative");
    }
    const auto start = std::chrono::steady_clock::now();
    AnySeries lhs = [&] {
        try {
            return build_side(c, true, order);
        } catch (const DomainError& e) {
            throw DomainError(c.id + " (left side): " + e.what());
        }
    }();
    AnySeries rhs = [&] {
        try {
            return build_side(c, false, order);
        } catch (const DomainError& e) {
            throw DomainError(c.id + " (right side): " + e.what());
        }
    }();
    if (lhs.index() != rhs.index()) {
        throw RingError(c.id + ": sides live in different coefficient rings");
    }
    if ((lhs.index() == 0) != (c.ring == Ring::integer)) {
        throw RingError(c.id + ": built series do not match the declared " + to_string(c.ring) + " ring");
    }
    if (opts.perturb_exponent) {
        const int e = *opts.perturb_exponent;
        if (e < 0 || e > order) {
            throw UsageError("perturbation exponent must lie in [0, order]");
        }
        std::visit(
            [e](auto& s) {
                using S = std::decay_t<decltype(s)>;
                using P = typename S::Coeff;
                s += S::monomial(P(1), e, s.trunc_order());
            },
            lhs);
    }
    VerificationReport report{c.id, order, std::nullopt, 0};
    if (lhs.index() == 0) {
        report.mismatch = compare_sides(std::get<0>(lhs), std::get<0>(rhs), order);
    } else {
        report.mismatch = compare_sides(std::get<1>(lhs), std::get<1>(rhs), order);
    }
    report.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<VerificationReport> verify_all(double scale, int jobs)
{
    if (!(scale > 0 && scale <= 1)) {
        throw UsageError("scale must lie in (0, 1]");
    }
    const auto& reg = identity_registry();
    std::vector<VerificationReport> out(reg.size());
    std::vector<std::exception_ptr> errors(reg.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < reg.size(); i = next++) {
            try {
                const int order = std::max(1, static_cast<int>(std::lround(scale * reg[i].default_order)));
                out[i] = verify(reg[i].id, {order, std::nullopt});
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(jobs, static_cast<int>(reg.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& th : pool) {
        th.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

} // namespace okrank
