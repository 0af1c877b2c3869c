#include "okrank/qobjects.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace okrank {

std::string SignedMonomial::to_string() const
{
    std::string s = sign < 0 ? "-" : "";
    s += "q^" + std::to_string(q_exp);
    if (a_exp != 0) {
        s += "*a^" + std::to_string(a_exp);
    }
    return s;
}

template <>
Integer from_integer<Integer>(const Integer& v)
{
    return v;
}
template <>
Rational from_integer<Rational>(const Integer& v)
{
    return Rational(v);
}
template <>
ZPoly from_integer<ZPoly>(const Integer& v)
{
    return ZPoly(v);
}
template <>
QPoly from_integer<QPoly>(const Integer& v)
{
    return QPoly(Rational(v));
}

template <class C>
C marker_coeff(int sign, int a_exp)
{
    return RingTraits<C>::monomial(sign, MarkerExp{0, a_exp});
}

long long QuadraticBound::at(long long n) const
{
    long long num = a * n * n + b * n;
    // floor division keeps this a lower bound for odd numerators
    long long half = num >= 0 ? num / 2 : -((-num + 1) / 2);
    return half + c;
}

std::optional<std::pair<long long, long long>> certified_range(const QuadraticBound& bound, long long order,
                                                               long long lo)
{
    if (bound.a <= 0) {
        throw DomainError("certified_range needs a positive leading coefficient");
    }
    // integer minimizer of a convex quadratic sits next to the vertex -b/(2a)
    const long double vertex = -static_cast<long double>(bound.b) / (2.0L * static_cast<long double>(bound.a));
    long long best = std::max(lo, static_cast<long long>(std::floor(vertex)));
    for (long long cand : {best - 1, best + 1, best + 2}) {
        if (cand >= lo && bound.at(cand) < bound.at(best)) {
            best = cand;
        }
    }
    if (bound.at(best) > order) {
        return std::nullopt;
    }
    long long left = best;
    while (left - 1 >= lo && bound.at(left - 1) <= order) {
        --left;
    }
    long long right = best;
    while (bound.at(right + 1) <= order) {
        ++right;
    }
    return std::make_pair(left, right);
}

template <class C>
Series<C> geometric_term(const C& coeff, int exp, const C& c, int d, int trunc)
{
    using T = RingTraits<C>;
    if (d > 0) {
        if (exp > trunc) {
            return Series<C>::zero(trunc);
        }
        return Series<C>::monomial(coeff, exp, trunc).div_binomial(-c, d);
    }
    if (d < 0) {
        // 1/(1 - c q^d) = -c^{-1} q^{-d} / (1 - c^{-1} q^{-d})
        C inv = T::inverse(c);
        int e = exp - d;
        if (e > trunc) {
            return Series<C>::zero(trunc);
        }
        return Series<C>::monomial(-(coeff * inv), e, trunc).div_binomial(-inv, -d);
    }
    C denom = T::one() - c;
    if (T::is_zero(denom)) {
        throw DomainError("pole: denominator 1 - c q^0 vanishes");
    }
    if (exp > trunc) {
        return Series<C>::zero(trunc);
    }
    return Series<C>::monomial(coeff * T::inverse(denom), exp, trunc);
}

namespace {

// Total |exponent| over factors (1 - arg q^{e}) with negative e, for e = q_exp + base*i, 0 <= i < count.
int negative_exponent_mass(int q_exp, int base, int count)
{
    int mass = 0;
    for (int i = 0; i < count; ++i) {
        int e = q_exp + base * i;
        if (e >= 0) {
            break;
        }
        mass -= e;
    }
    return mass;
}

} // namespace

template <class C>
Series<C> poch_finite(SignedMonomial arg, int n, int trunc)
{
    if (n < 0) {
        throw DomainError("poch_finite needs n >= 0");
    }
    const C minus_arg = marker_coeff<C>(-arg.sign, arg.a_exp);
    const int headroom = negative_exponent_mass(arg.q_exp, 1, n);
    Series<C> acc = Series<C>::one(trunc + headroom);
    for (int i = 0; i < n; ++i) {
        acc = acc.mul_binomial(minus_arg, arg.q_exp + i);
    }
    return acc.truncated(trunc);
}

template <class C>
Series<C> poch_ratio(SignedMonomial x, SignedMonomial y, int n, int trunc)
{
    if (n < 0) {
        const int m = -n;
        return poch_ratio<C>(y * qmono(1, n), x * qmono(1, n), m, trunc);
    }
    const int mass = negative_exponent_mass(x.q_exp, 1, n) + negative_exponent_mass(y.q_exp, 1, n);
    const int work = trunc + 2 * mass;
    Series<C> num = poch_finite<C>(x, n, work);
    Series<C> den = poch_finite<C>(y, n, work).inverse();
    return (num * den).truncated(trunc);
}

template <class C>
Series<C> poch(SignedMonomial arg, int n, int trunc)
{
    if (n >= 0) {
        return poch_finite<C>(arg, n, trunc);
    }
    const int m = -n;
    const SignedMonomial shifted = arg * qmono(1, n);
    const int mass = negative_exponent_mass(shifted.q_exp, 1, m);
    return poch_finite<C>(shifted, m, trunc + 2 * mass).inverse().truncated(trunc);
}

template <class C>
Series<C> poch_inf(SignedMonomial arg, int base, int trunc)
{
    if (base < 1) {
        throw DomainError("poch_inf needs a positive base");
    }
    if (arg.sign == 1 && arg.a_exp == 0 && arg.q_exp <= 0 && arg.q_exp % base == 0) {
        throw DomainError("(" + arg.to_string() + "; q^" + std::to_string(base) +
                          ")_inf has a vanishing factor at q^0");
    }
    const C minus_arg = marker_coeff<C>(-arg.sign, arg.a_exp);
    int neg_count = 0;
    while (arg.q_exp + base * neg_count < 0) {
        ++neg_count;
    }
    const int headroom = negative_exponent_mass(arg.q_exp, base, neg_count);
    const int work = trunc + headroom;
    Series<C> acc = Series<C>::one(work);
    // factors beyond q^work are 1 modulo everything kept after the final truncation
    for (int i = neg_count; arg.q_exp + base * i <= work; ++i) {
        acc = acc.mul_binomial(minus_arg, arg.q_exp + base * i);
    }
    for (int i = 0; i < neg_count; ++i) {
        acc = acc.mul_binomial(minus_arg, arg.q_exp + base * i);
    }
    return acc.truncated(trunc);
}

template <class C>
Series<C> gauss_binomial(int n, int m, int trunc)
{
    if (m < 0 || m > n) {
        return Series<C>::zero(trunc);
    }
    // q-Pascal: [n, m] = [n-1, m-1] + q^m [n-1, m]
    std::vector<std::vector<Integer>> row(m + 1);
    row[0] = {1};
    for (int r = 1; r <= n; ++r) {
        for (int c = std::min(r, m); c >= 1; --c) {
            const auto& left = row[c - 1];
            const auto& up = row[c];
            std::vector<Integer> next(std::max(left.size(), up.size() + c), 0);
            for (std::size_t i = 0; i < left.size(); ++i) {
                next[i] += left[i];
            }
            if (c < r) {
                for (std::size_t i = 0; i < up.size(); ++i) {
                    next[i + c] += up[i];
                }
            }
            row[c] = std::move(next);
        }
    }
    const auto& poly = row[m];
    std::vector<C> coeffs;
    const int top = std::max(trunc, 0);
    coeffs.reserve(top + 1);
    for (int i = 0; i <= top; ++i) {
        coeffs.push_back(i < static_cast<int>(poly.size()) ? from_integer<C>(poly[i]) : RingTraits<C>::zero());
    }
    if (trunc < 0) {
        return Series<C>::zero(trunc);
    }
    return Series<C>(0, trunc, std::move(coeffs));
}

int theta_valuation(SignedMonomial z, int base)
{
    int mass = 0;
    for (int e = z.q_exp; e < 0; e += base) {
        mass -= e;
    }
    for (int e = base - z.q_exp; e < 0; e += base) {
        mass -= e;
    }
    return -mass;
}

template <class C>
Series<C> jtheta(SignedMonomial z, int base, int trunc)
{
    if (z.a_exp != 0) {
        throw DomainError("jtheta takes a pure q-monomial");
    }
    if (base < 1) {
        throw DomainError("jtheta needs a positive base");
    }
    if (z.sign == 1 && z.q_exp % base == 0) {
        throw DomainError("j(" + z.to_string() + "; q^" + std::to_string(base) + ") vanishes identically");
    }
    const int work = trunc - 2 * theta_valuation(z, base);
    const SignedMonomial partner{z.sign, base - z.q_exp, 0};
    Series<C> prod = poch_inf<C>(z, base, work) * poch_inf<C>(partner, base, work) *
                     poch_inf<C>(qmono(1, base), base, work);
    return prod.truncated(trunc);
}

Series<Rational> appell_lerch(SignedMonomial x, SignedMonomial z, int base, int trunc)
{
    if (x.a_exp != 0 || z.a_exp != 0) {
        throw DomainError("appell_lerch takes pure q-monomials");
    }
    if (base < 1) {
        throw DomainError("appell_lerch needs a positive base");
    }
    if (z.sign == 1 && z.q_exp % base == 0) {
        throw DomainError("j(" + z.to_string() + "; q^" + std::to_string(base) + ") vanishes, m(x,q,z) undefined");
    }
    // denominator 1 - x z q^{base(n-1)} vanishes iff xz = +q^{base(1-n)}
    const int c = x.sign * z.sign;
    const int xz = x.q_exp + z.q_exp;
    if (c == 1 && xz % base == 0) {
        const int n = 1 - xz / base;
        throw DomainError("appell_lerch pole at n = " + std::to_string(n));
    }
    const int v_theta = theta_valuation(z, base);
    const int sum_trunc = trunc + v_theta;
    const QuadraticBound bound{base, 2LL * z.q_exp - base, 0};
    auto term = [&](int n, int t) {
        const int exp = base * n * (n - 1) / 2 + n * z.q_exp;
        const int sgn = ((n % 2 == 0) ? 1 : -1) * ((n % 2 == 0 || z.sign == 1) ? 1 : -1);
        const int d = base * (n - 1) + xz;
        return geometric_term<Rational>(Rational(sgn), exp, Rational(c), d, t);
    };
    Series<Rational> sum = certified_sum<Rational>(bound, sum_trunc, term);
    const int v_sum = std::min(sum.valuation(), sum_trunc);
    const int theta_trunc = std::max(trunc - v_sum - 2 * (-v_theta), v_theta);
    Series<Rational> theta = jtheta<Rational>(z, base, theta_trunc);
    if (theta.is_zero_window()) {
        throw DomainError("theta window vanished; cannot divide");
    }
    return (sum * theta.inverse()).truncated(trunc);
}

Series<Rational> jacobi_bilateral_sum(SignedMonomial z, int base, int trunc)
{
    if (z.a_exp != 0) {
        throw DomainError("jacobi_bilateral_sum takes a pure q-monomial");
    }
    if (z.sign == 1 && z.q_exp % base == 0) {
        throw DomainError("pole at n = " + std::to_string(-z.q_exp / base));
    }
    const QuadraticBound bound{base, base, 0};
    auto term = [&](int n, int t) {
        const int exp = base * n * (n + 1) / 2;
        const int d = z.q_exp + base * n;
        return geometric_term<Rational>(Rational(n % 2 == 0 ? 1 : -1), exp, Rational(z.sign), d, t);
    };
    return certified_sum<Rational>(bound, trunc, term);
}

template <class C>
Series<C> mock_X(int trunc)
{
    if (trunc < 0) {
        throw TruncationError("mock_X needs trunc >= 0");
    }
    Series<C> total = Series<C>::zero(trunc);
    const C one = RingTraits<C>::one();
    for (int n = 0; n * n <= trunc; ++n) {
        Series<C> t = Series<C>::monomial(from_integer<C>(n % 2 == 0 ? 1 : -1), n * n, trunc);
        for (int i = 1; i <= 2 * n; ++i) {
            t = t.div_binomial(one, i);
        }
        total += t;
    }
    return total;
}

template <class C>
Series<C> mock_chi(int trunc)
{
    if (trunc < 0) {
        throw TruncationError("mock_chi needs trunc >= 0");
    }
    Series<C> total = Series<C>::zero(trunc);
    const C one = RingTraits<C>::one();
    for (int n = 0; (n + 1) * (n + 1) <= trunc; ++n) {
        Series<C> t = Series<C>::monomial(from_integer<C>(n % 2 == 0 ? 1 : -1), (n + 1) * (n + 1), trunc);
        for (int i = 1; i <= 2 * n + 1; ++i) {
            t = t.div_binomial(one, i);
        }
        total += t;
    }
    return total;
}

#define OKRANK_INSTANTIATE_QOBJECTS(C)                                                                          \
    template C marker_coeff<C>(int, int);                                                                       \
    template Series<C> geometric_term<C>(const C&, int, const C&, int, int);                                    \
    template Series<C> poch_finite<C>(SignedMonomial, int, int);                                                \
    template Series<C> poch_ratio<C>(SignedMonomial, SignedMonomial, int, int);                                 \
    template Series<C> poch<C>(SignedMonomial, int, int);                                                       \
    template Series<C> poch_inf<C>(SignedMonomial, int, int);                                                   \
    template Series<C> gauss_binomial<C>(int, int, int);                                                        \
    template Series<C> jtheta<C>(SignedMonomial, int, int);                                                     \
    template Series<C> mock_X<C>(int);                                                                          \
    template Series<C> mock_chi<C>(int);

OKRANK_INSTANTIATE_QOBJECTS(Integer)
OKRANK_INSTANTIATE_QOBJECTS(Rational)
OKRANK_INSTANTIATE_QOBJECTS(ZPoly)
OKRANK_INSTANTIATE_QOBJECTS(QPoly)

#undef OKRANK_INSTANTIATE_QOBJECTS

} // namespace okrank
