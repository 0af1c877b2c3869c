#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "okrank/errors.hpp"
#include "okrank/marker_poly.hpp"
#include "okrank/ring.hpp"

namespace okrank {

/// Exact Laurent series in q, known on the window [min_order, trunc_order].
///
/// Coefficients below min_order are zero; coefficients above trunc_order are
/// unknown. Every operation returns the largest order at which its result is
/// provably correct, so truncation errors cannot leak into comparisons.
template <class C>
class Series {
public:
    using Coeff = C;
    using Traits = RingTraits<C>;

    Series(int min_order, int trunc_order, std::vector<C> coeffs)
        : min_order_(min_order), trunc_order_(trunc_order), coeffs_(std::move(coeffs))
    {
        if (min_order_ > trunc_order_) {
            throw TruncationError("min_order " + std::to_string(min_order_) + " exceeds trunc_order " +
                                  std::to_string(trunc_order_));
        }
        if (coeffs_.size() != static_cast<std::size_t>(trunc_order_ - min_order_ + 1)) {
            throw TruncationError("coefficient count does not match the window");
        }
    }

    static Series zero(int trunc_order)
    {
        int lo = std::min(0, trunc_order);
        return Series(lo, trunc_order, std::vector<C>(trunc_order - lo + 1, Traits::zero()));
    }

    /// c * q^exponent, known through trunc_order.
    static Series monomial(C c, int exponent, int trunc_order)
    {
        if (trunc_order < exponent) {
            throw TruncationError("truncation order " + std::to_string(trunc_order) + " below exponent " +
                                  std::to_string(exponent));
        }
        std::vector<C> v(trunc_order - exponent + 1, Traits::zero());
        v[0] = std::move(c);
        return Series(exponent, trunc_order, std::move(v));
    }

    static Series one(int trunc_order) { return monomial(Traits::one(), 0, trunc_order); }

    int min_order() const { return min_order_; }
    int trunc_order() const { return trunc_order_; }
    std::span<const C> coefficients() const { return coeffs_; }

    /// Exponent of the lowest nonzero coefficient, or trunc_order + 1 when the
    /// known window is identically zero.
    int valuation() const
    {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (!Traits::is_zero(coeffs_[i])) {
                return min_order_ + static_cast<int>(i);
            }
        }
        return trunc_order_ + 1;
    }

    bool is_zero_window() const { return valuation() > trunc_order_; }

    /// Stored coefficient; throws outside [min_order, trunc_order].
    const C& at(int n) const
    {
        if (n < min_order_ || n > trunc_order_) {
            throw RangeError("exponent " + std::to_string(n) + " outside known window [" + std::to_string(min_order_) +
                             ", " + std::to_string(trunc_order_) + "]");
        }
        return coeffs_[n - min_order_];
    }

    /// Like at(), but exponents below the window read as zero.
    C coeff(int n) const
    {
        if (n < min_order_) {
            if (n > trunc_order_) {
                throw RangeError("exponent " + std::to_string(n) + " above truncation order");
            }
            return Traits::zero();
        }
        return at(n);
    }

    Series truncated(int t) const
    {
        if (t >= trunc_order_) {
            return *this;
        }
        if (t < min_order_) {
            return Series(t, t, std::vector<C>{Traits::zero()});
        }
        return Series(min_order_, t, std::vector<C>(coeffs_.begin(), coeffs_.begin() + (t - min_order_ + 1)));
    }

    /// Drops leading zeros, keeping at least one coefficient.
    Series trimmed() const
    {
        int v = std::min(valuation(), trunc_order_);
        if (v == min_order_) {
            return *this;
        }
        return Series(v, trunc_order_, std::vector<C>(coeffs_.begin() + (v - min_order_), coeffs_.end()));
    }

    /// Multiplication by q^e.
    Series shifted(int e) const { return Series(min_order_ + e, trunc_order_ + e, coeffs_); }

    Series scaled(const C& c) const
    {
        Series r = *this;
        for (auto& x : r.coeffs_) {
            x = x * c;
        }
        return r;
    }

    /// this * (1 + c q^e). Exact in the factor, so only the shift costs order.
    Series mul_binomial(const C& c, int e) const { return *this + scaled(c).shifted(e); }

    /// this / (1 + c q^e) for e >= 1, via t_n = s_n - c t_{n-e}.
    Series div_binomial(const C& c, int e) const
    {
        if (e < 1) {
            throw DomainError("div_binomial needs a positive exponent");
        }
        Series r = *this;
        for (std::size_t i = e; i < r.coeffs_.size(); ++i) {
            if (!Traits::is_zero(r.coeffs_[i - e])) {
                r.coeffs_[i] -= c * r.coeffs_[i - e];
            }
        }
        return r;
    }

    /// Multiplicative inverse. With s = q^v (u_0 + u_1 q + ...), the result
    /// starts at q^{-v} and is known through trunc_order - 2v.
    Series inverse() const
    {
        const int v = valuation();
        if (v > trunc_order_) {
            throw InversionError("cannot invert a series whose known window is identically zero");
        }
        const C& lead = at(v);
        if (!Traits::is_unit(lead)) {
            throw InversionError("leading coefficient " + Traits::to_string(lead) + " is not invertible in the " +
                                 Traits::name + " ring");
        }
        const int rel = trunc_order_ - v;
        const C inv = Traits::inverse(lead);
        std::vector<int> nz;
        for (int i = 1; i <= rel; ++i) {
            if (!Traits::is_zero(at(v + i))) {
                nz.push_back(i);
            }
        }
        std::vector<C> w(rel + 1, Traits::zero());
        w[0] = inv;
        for (int n = 1; n <= rel; ++n) {
            typename Traits::Accumulator acc;
            for (int i : nz) {
                if (i > n) {
                    break;
                }
                if (!Traits::is_zero(w[n - i])) {
                    acc.add_product(at(v + i), w[n - i]);
                }
            }
            C sum = acc.take();
            if (!Traits::is_zero(sum)) {
                w[n] = -(inv * sum);
            }
        }
        return Series(-v, trunc_order_ - 2 * v, std::move(w));
    }

    /// Applies f coefficientwise, e.g. to change rings or specialize a marker.
    template <class F>
    auto map(F f) const -> Series<decltype(f(std::declval<const C&>()))>
    {
        using D = decltype(f(std::declval<const C&>()));
        std::vector<D> out;
        out.reserve(coeffs_.size());
        for (const auto& c : coeffs_) {
            out.push_back(f(c));
        }
        return Series<D>(min_order_, trunc_order_, std::move(out));
    }

    Series operator-() const
    {
        Series r = *this;
        for (auto& x : r.coeffs_) {
            x = -x;
        }
        return r;
    }

    friend Series operator+(const Series& x, const Series& y) { return combine(x, y, false); }
    friend Series operator-(const Series& x, const Series& y) { return combine(x, y, true); }

    friend Series operator*(const Series& x, const Series& y)
    {
        const int vx = x.valuation();
        const int vy = y.valuation();
        const int t = std::min(x.trunc_order_ + vy, y.trunc_order_ + vx);
        const int lo = std::min(vx + vy, t);
        std::vector<int> nzx;
        std::vector<int> nzy;
        for (int i = vx; i <= x.trunc_order_; ++i) {
            if (!Traits::is_zero(x.at(i))) {
                nzx.push_back(i);
            }
        }
        for (int i = vy; i <= y.trunc_order_; ++i) {
            if (!Traits::is_zero(y.at(i))) {
                nzy.push_back(i);
            }
        }
        std::vector<C> out(t - lo + 1, Traits::zero());
        if (!nzx.empty() && !nzy.empty()) {
            for (int n = lo; n <= t; ++n) {
                typename Traits::Accumulator acc;
                bool any = false;
                for (int i : nzx) {
                    int j = n - i;
                    if (j < vy) {
                        break;
                    }
                    if (j > y.trunc_order_) {
                        continue;
                    }
                    const C& b = y.coeffs_[j - y.min_order_];
                    if (!Traits::is_zero(b)) {
                        acc.add_product(x.coeffs_[i - x.min_order_], b);
                        any = true;
                    }
                }
                if (any) {
                    out[n - lo] = acc.take();
                }
            }
        }
        return Series(lo, t, std::move(out));
    }

    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

private:
    static Series combine(const Series& x, const Series& y, bool subtract)
    {
        const int lo = std::min(x.min_order_, y.min_order_);
        const int t = std::min(x.trunc_order_, y.trunc_order_);
        std::vector<C> out(t - lo + 1, Traits::zero());
        for (int n = std::max(lo, x.min_order_); n <= t; ++n) {
            out[n - lo] = x.coeffs_[n - x.min_order_];
        }
        for (int n = std::max(lo, y.min_order_); n <= t; ++n) {
            const C& b = y.coeffs_[n - y.min_order_];
            if (Traits::is_zero(b)) {
                continue;
            }
            if (subtract) {
                out[n - lo] -= b;
            } else {
                out[n - lo] += b;
            }
        }
        return Series(lo, t, std::move(out));
    }

    int min_order_;
    int trunc_order_;
    std::vector<C> coeffs_;
};

/// Smallest exponent where two series differ, with both values.
template <class C>
struct Mismatch {
    int exponent;
    C lhs;
    C rhs;
};

/// Outcome of comparing two series through a common order.
template <class C>
struct Comparison {
    int order;
    std::optional<Mismatch<C>> mismatch;

    bool equal() const { return !mismatch.has_value(); }
};

/// Compares coefficients through exponent `order`. Differences above `order`
/// are invisible by construction.
template <class C>
Comparison<C> compare_up_to(const Series<C>& x, const Series<C>& y, int order)
{
    if (order > x.trunc_order() || order > y.trunc_order()) {
        throw RangeError("comparison order " + std::to_string(order) + " exceeds a truncation order (" +
                         std::to_string(x.trunc_order()) + ", " + std::to_string(y.trunc_order()) + ")");
    }
    const int lo = std::min(x.min_order(), y.min_order());
    for (int n = lo; n <= order; ++n) {
        C a = x.coeff(n);
        C b = y.coeff(n);
        if (!(a == b)) {
            return {order, Mismatch<C>{n, std::move(a), std::move(b)}};
        }
    }
    return {order, std::nullopt};
}

template <class C>
bool equal_up_to(const Series<C>& x, const Series<C>& y, int order)
{
    return compare_up_to(x, y, order).equal();
}

/// Coefficient ring change (Integer -> Rational, scalar -> marker polynomial).
template <class To, class From>
Series<To> convert_series(const Series<From>& s)
{
    if constexpr (std::is_same_v<To, From>) {
        return s;
    } else if constexpr (std::is_same_v<To, QPoly> && std::is_same_v<From, ZPoly>) {
        return s.map([](const ZPoly& p) {
            std::vector<QPoly::Term> terms;
            terms.reserve(p.size());
            for (const auto& [e, c] : p.terms()) {
                terms.emplace_back(e, Rational(c));
            }
            return QPoly::from_terms(std::move(terms));
        });
    } else if constexpr (std::is_same_v<To, QPoly>) {
        return s.map([](const From& c) { return QPoly(Rational(c)); });
    } else if constexpr (std::is_same_v<To, ZPoly>) {
        return s.map([](const From& c) { return ZPoly(Integer(c)); });
    } else {
        return s.map([](const From& c) { return To(c); });
    }
}

} // namespace okrank
