#pragma once

#include <climits>
#include <optional>
#include <string>
#include <utility>

#include "okrank/series.hpp"

namespace okrank {

/// sign * q^q_exp * a^a_exp; the argument type of every Pochhammer symbol,
/// theta function and Appell-Lerch sum built here.
struct SignedMonomial {
    int sign = 1;
    int q_exp = 0;
    int a_exp = 0;

    friend bool operator==(const SignedMonomial&, const SignedMonomial&) = default;

    friend SignedMonomial operator*(SignedMonomial x, SignedMonomial y)
    {
        return {x.sign * y.sign, x.q_exp + y.q_exp, x.a_exp + y.a_exp};
    }
    friend SignedMonomial operator/(SignedMonomial x, SignedMonomial y)
    {
        return {x.sign * y.sign, x.q_exp - y.q_exp, x.a_exp - y.a_exp};
    }

    std::string to_string() const;
};

/// Shorthand for sign * q^e.
constexpr SignedMonomial qmono(int sign, int e, int a_exp = 0) { return {sign, e, a_exp}; }

/// Converts an exact integer into any supported coefficient ring.
template <class C>
C from_integer(const Integer& v);

/// Coefficient sign * a^a_exp as a ring element (a_exp must be 0 for scalar rings).
template <class C>
C marker_coeff(int sign, int a_exp);

/// Lower bound (a n^2 + b n)/2 + c on the q-valuation of the n-th term of a sum.
/// Requires a > 0, so the bound is convex in n and the set where it stays
/// below a truncation order is a finite interval.
struct QuadraticBound {
    long long a = 1;
    long long b = 0;
    long long c = 0;

    long long at(long long n) const;
};

/// The integers n >= lo with bound.at(n) <= order, as a closed interval.
/// Every n outside the interval has a term of valuation > order.
std::optional<std::pair<long long, long long>> certified_range(const QuadraticBound& bound, long long order,
                                                               long long lo = LLONG_MIN / 4);

/// Sums term(n, trunc) over the certified range of `bound`. Each term must be
/// known through `trunc`.
template <class C, class F>
Series<C> certified_sum(const QuadraticBound& bound, int trunc, F&& term, long long lo = LLONG_MIN / 4)
{
    Series<C> total = Series<C>::zero(trunc);
    if (auto range = certified_range(bound, trunc, lo)) {
        for (long long n = range->first; n <= range->second; ++n) {
            total += term(static_cast<int>(n), trunc);
        }
    }
    return total.truncated(trunc);
}

/// coeff * q^exp / (1 - c q^d), known through trunc. Negative d is re-expanded
/// as -c^{-1} q^{-d} / (1 - c^{-1} q^{-d}); d == 0 needs 1 - c invertible.
/// Returns the zero series when the term starts above trunc.
template <class C>
Series<C> geometric_term(const C& coeff, int exp, const C& c, int d, int trunc);

/// (arg; q)_n = prod_{i<n} (1 - arg q^i), for n >= 0.
template <class C>
Series<C> poch_finite(SignedMonomial arg, int n, int trunc);

/// (arg; q)_n for any integer n, using (x;q)_{-n} = 1/(x q^{-n}; q)_n.
template <class C>
Series<C> poch(SignedMonomial arg, int n, int trunc);

/// (x; q)_n / (y; q)_n for any integer n. For negative n this is evaluated as
/// (y q^n; q)_{-n} / (x q^n; q)_{-n}, which keeps the denominator invertible
/// for the arguments used here (e.g. x = -1/a, y = -aq).
template <class C>
Series<C> poch_ratio(SignedMonomial x, SignedMonomial y, int n, int trunc);

/// (arg; q^base)_infinity. Throws DomainError when a factor vanishes identically.
template <class C>
Series<C> poch_inf(SignedMonomial arg, int base, int trunc);

/// Gaussian binomial [n choose m]_q; the zero series when m < 0 or m > n.
template <class C>
Series<C> gauss_binomial(int n, int m, int trunc);

/// Exponent of the lowest term of j(z; q^base).
int theta_valuation(SignedMonomial z, int base);

/// j(z; q^base) = (z;q^base)_inf (q^base/z;q^base)_inf (q^base;q^base)_inf.
template <class C>
Series<C> jtheta(SignedMonomial z, int base, int trunc);

/// Appell-Lerch sum m(x, q^base, z), with a certified bilateral range.
Series<Rational> appell_lerch(SignedMonomial x, SignedMonomial z, int base, int trunc);

/// Tenth-order mock theta function X(q).
template <class C>
Series<C> mock_X(int trunc);

/// Tenth-order mock theta function chi(q).
template <class C>
Series<C> mock_chi(int trunc);

/// sum_n (-1)^n q^{base*(n+1 choose 2)} / (1 - z q^{base*n}), bilateral.
Series<Rational> jacobi_bilateral_sum(SignedMonomial z, int base, int trunc);

} // namespace okrank
