#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "okrank/ring.hpp"

namespace okrank {

/// Sparse Laurent polynomial in the markers z and a over a scalar ring.
///
/// Terms are kept sorted by exponent with no stored zeros, so two equal
/// polynomials have identical term vectors.
template <class C>
class MarkerPoly {
public:
    using Scalar = C;
    using Term = std::pair<MarkerExp, C>;

    MarkerPoly() = default;

    MarkerPoly(C c) // NOLINT(google-explicit-constructor): scalars embed as constants
    {
        if (!RingTraits<C>::is_zero(c)) {
            terms_.emplace_back(MarkerExp{}, std::move(c));
        }
    }

    MarkerPoly(long c) : MarkerPoly(C(c)) {} // NOLINT(google-explicit-constructor)

    static MarkerPoly monomial(C c, MarkerExp e)
    {
        MarkerPoly p;
        if (!RingTraits<C>::is_zero(c)) {
            p.terms_.emplace_back(e, std::move(c));
        }
        return p;
    }

    /// Builds from arbitrary (unsorted, possibly repeated) terms.
    static MarkerPoly from_terms(std::vector<Term> terms)
    {
        MarkerPoly p;
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    C coeff(MarkerExp e) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const MarkerExp& k) { return t.first < k; });
        if (it != terms_.end() && it->first == e) {
            return it->second;
        }
        return RingTraits<C>::zero();
    }

    MarkerPoly operator-() const
    {
        MarkerPoly r = *this;
        for (auto& t : r.terms_) {
            t.second = -t.second;
        }
        return r;
    }

    MarkerPoly& operator+=(const MarkerPoly& o)
    {
        *this = merge(*this, o, false);
        return *this;
    }
    MarkerPoly& operator-=(const MarkerPoly& o)
    {
        *this = merge(*this, o, true);
        return *this;
    }

    friend MarkerPoly operator+(const MarkerPoly& x, const MarkerPoly& y) { return merge(x, y, false); }
    friend MarkerPoly operator-(const MarkerPoly& x, const MarkerPoly& y) { return merge(x, y, true); }

    friend MarkerPoly operator*(const MarkerPoly& x, const MarkerPoly& y)
    {
        std::vector<Term> out;
        out.reserve(x.terms_.size() * y.terms_.size());
        for (const auto& [ex, cx] : x.terms_) {
            for (const auto& [ey, cy] : y.terms_) {
                out.emplace_back(MarkerExp{ex.z + ey.z, ex.a + ey.a}, cx * cy);
            }
        }
        return from_terms(std::move(out));
    }

    friend bool operator==(const MarkerPoly& x, const MarkerPoly& y) { return x.terms_ == y.terms_; }

    /// Multiplies every exponent by the monomial z^e.z a^e.a.
    MarkerPoly shifted(MarkerExp e) const
    {
        MarkerPoly r = *this;
        for (auto& t : r.terms_) {
            t.first.z += e.z;
            t.first.a += e.a;
        }
        return r;
    }

    /// Substitutes a = value (a_exp collapses to 0); requires non-negative a exponents
    /// unless value is a unit of the scalar ring.
    MarkerPoly substitute_a(const C& value) const
    {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& [e, c] : terms_) {
            C factor = RingTraits<C>::one();
            if (e.a >= 0) {
                for (int i = 0; i < e.a; ++i) {
                    factor *= value;
                }
            } else {
                C inv = RingTraits<C>::inverse(value);
                for (int i = 0; i < -e.a; ++i) {
                    factor *= inv;
                }
            }
            out.emplace_back(MarkerExp{e.z, 0}, c * factor);
        }
        return from_terms(std::move(out));
    }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == MarkerExp{}); }

    std::string to_string() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        for (const auto& [e, c] : terms_) {
            std::string cs = RingTraits<C>::to_string(c);
            if (!s.empty()) {
                s += (cs.front() == '-') ? " - " : " + ";
                if (cs.front() == '-') {
                    cs.erase(0, 1);
                }
            }
            s += cs;
            if (e.z != 0) {
                s += "*z^" + std::to_string(e.z);
            }
            if (e.a != 0) {
                s += "*a^" + std::to_string(e.a);
            }
        }
        return s;
    }

private:
    void normalize()
    {
        std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().first == t.first) {
                out.back().second += t.second;
            } else {
                if (!out.empty() && RingTraits<C>::is_zero(out.back().second)) {
                    out.pop_back();
                }
                out.push_back(std::move(t));
            }
        }
        if (!out.empty() && RingTraits<C>::is_zero(out.back().second)) {
            out.pop_back();
        }
        terms_ = std::move(out);
    }

    static MarkerPoly merge(const MarkerPoly& x, const MarkerPoly& y, bool subtract)
    {
        MarkerPoly r;
        r.terms_.reserve(x.terms_.size() + y.terms_.size());
        auto i = x.terms_.begin();
        auto j = y.terms_.begin();
        while (i != x.terms_.end() || j != y.terms_.end()) {
            if (j == y.terms_.end() || (i != x.terms_.end() && i->first < j->first)) {
                r.terms_.push_back(*i++);
            } else if (i == x.terms_.end() || j->first < i->first) {
                r.terms_.emplace_back(j->first, subtract ? C(-j->second) : j->second);
                ++j;
            } else {
                C c = subtract ? C(i->second - j->second) : C(i->second + j->second);
                if (!RingTraits<C>::is_zero(c)) {
                    r.terms_.emplace_back(i->first, std::move(c));
                }
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::vector<Term> terms_;
};

using ZPoly = MarkerPoly<Integer>;
using QPoly = MarkerPoly<Rational>;

template <class C>
struct RingTraits<MarkerPoly<C>> {
    using Poly = MarkerPoly<C>;
    static constexpr const char* name = RingTraits<C>::name;
    static constexpr bool has_markers = true;

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(RingTraits<C>::one()); }
    static Poly from_int(long v) { return Poly(RingTraits<C>::from_int(v)); }
    static bool is_zero(const Poly& p) { return p.is_zero(); }

    /// Units are exactly the monomials with a unit coefficient.
    static bool is_unit(const Poly& p) { return p.size() == 1 && RingTraits<C>::is_unit(p.terms()[0].second); }

    static Poly inverse(const Poly& p)
    {
        if (!is_unit(p)) {
            throw InversionError("marker polynomial " + p.to_string() + " is not a unit");
        }
        const auto& [e, c] = p.terms()[0];
        return Poly::monomial(RingTraits<C>::inverse(c), MarkerExp{-e.z, -e.a});
    }

    static Poly monomial(long coeff, MarkerExp e) { return Poly::monomial(C(coeff), e); }
    static std::string to_string(const Poly& p) { return p.to_string(); }

    /// Collects raw term products and merges them once.
    class Accumulator {
    public:
        void add_product(const Poly& x, const Poly& y)
        {
            for (const auto& [ex, cx] : x.terms()) {
                for (const auto& [ey, cy] : y.terms()) {
                    raw_.emplace_back(MarkerExp{ex.z + ey.z, ex.a + ey.a}, cx * cy);
                }
            }
        }
        void add(const Poly& x) { raw_.insert(raw_.end(), x.terms().begin(), x.terms().end()); }
        Poly take() { return Poly::from_terms(std::move(raw_)); }

    private:
        std::vector<typename Poly::Term> raw_;
    };
};

} // namespace okrank
