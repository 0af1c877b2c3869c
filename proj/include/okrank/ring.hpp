#pragma once

#include <gmpxx.h>

#include <string>

#include "okrank/errors.hpp"

namespace okrank {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exponents of the two markers carried by marker polynomials:
/// z tracks a rank statistic, a tracks the number of overlined parts.
struct MarkerExp {
    int z = 0;
    int a = 0;

    friend auto operator<=>(const MarkerExp&, const MarkerExp&) = default;
    friend bool operator==(const MarkerExp&, const MarkerExp&) = default;
};

template <class C>
struct RingTraits;

template <>
struct RingTraits<Integer> {
    static constexpr const char* name = "Integer";
    static constexpr bool has_markers = false;

    static Integer zero() { return 0; }
    static Integer one() { return 1; }
    static Integer from_int(long v) { return v; }
    static bool is_zero(const Integer& c) { return sgn(c) == 0; }
    static bool is_unit(const Integer& c) { return c == 1 || c == -1; }
    static Integer inverse(const Integer& c)
    {
        if (!is_unit(c)) {
            throw InversionError("integer " + c.get_str() + " has no integer inverse");
        }
        return c;
    }
    static Integer monomial(long coeff, MarkerExp e)
    {
        if (e.z != 0 || e.a != 0) {
            throw DomainError("Integer ring carries no markers");
        }
        return coeff;
    }
    static std::string to_string(const Integer& c) { return c.get_str(); }

    /// Running sum of products; scalar rings just fold in place.
    class Accumulator {
    public:
        void add_product(const Integer& x, const Integer& y) { mpz_addmul(sum_.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t()); }
        void add(const Integer& x) { sum_ += x; }
        Integer take() { return std::move(sum_); }

    private:
        Integer sum_ = 0;
    };
};

template <>
struct RingTraits<Rational> {
    static constexpr const char* name = "Rational";
    static constexpr bool has_markers = false;

    static Rational zero() { return 0; }
    static Rational one() { return 1; }
    static Rational from_int(long v) { return v; }
    static bool is_zero(const Rational& c) { return sgn(c) == 0; }
    static bool is_unit(const Rational& c) { return sgn(c) != 0; }
    static Rational inverse(const Rational& c)
    {
        if (!is_unit(c)) {
            throw InversionError("zero has no inverse");
        }
        return Rational(1) / c;
    }
    static Rational monomial(long coeff, MarkerExp e)
    {
        if (e.z != 0 || e.a != 0) {
            throw DomainError("Rational ring carries no markers");
        }
        return coeff;
    }
    static std::string to_string(const Rational& c) { return c.get_str(); }

    class Accumulator {
    public:
        void add_product(const Rational& x, const Rational& y) { sum_ += x * y; }
        void add(const Rational& x) { sum_ += x; }
        Rational take()
        {
            sum_.canonicalize();
            return std::move(sum_);
        }

    private:
        Rational sum_ = 0;
    };
};

} // namespace okrank
