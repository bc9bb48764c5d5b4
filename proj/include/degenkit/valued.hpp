#pragma once

#include "degenkit/arith.hpp"

#include <map>
#include <string>

namespace degenkit {

/// sign * prod p^(a_p) * t^(c), a_p and c rational; a multiplicative group (no zero).
class ValuedScalar {
public:
    ValuedScalar() = default;
    ValuedScalar(int sign, std::map<Integer, Rational> unit, Rational t_exponent);

    static ValuedScalar one() { return {}; }
    static ValuedScalar t_power(const Rational& e);
    /// A nonzero rational number, factored into primes.
    static ValuedScalar from_rational(const Rational& q);

    int sign() const { return sign_; }
    const std::map<Integer, Rational>& unit_part() const { return unit_; }
    const Rational& t_exponent() const { return t_; }

    ValuedScalar operator*(const ValuedScalar& o) const;
    ValuedScalar& operator*=(const ValuedScalar& o);
    ValuedScalar operator/(const ValuedScalar& o) const;
    ValuedScalar inverse() const;
    ValuedScalar pow(const Integer& k) const;
    ValuedScalar with_sign(int s) const;

    /// True when every exponent is an integer (an element of Q^x * t^Z).
    bool is_rational_monomial() const;
    /// The unit part as a rational number; requires integral prime exponents.
    Rational unit_value() const;

    bool operator==(const ValuedScalar& o) const;
    bool operator!=(const ValuedScalar& o) const { return !(*this == o); }
    bool operator<(const ValuedScalar& o) const;

    std::string str() const;
    static ValuedScalar parse(const std::string& s);

private:
    void normalize();
    int sign_ = 1;
    std::map<Integer, Rational> unit_;
    Rational t_ = 0;
};

ValuedScalar vs_mul(const ValuedScalar& a, const ValuedScalar& b);
/// e-th root. Positive part is unique; a negative value has a negative root for odd e
/// and raises DomainError("sign obstruction: needs root of unity") for even e.
ValuedScalar vs_root(const ValuedScalar& a, const Integer& e);
Rational vs_valuation(const ValuedScalar& a);

std::map<Integer, int> factor_integer(Integer n);

/// Finite sum of c * t^e with rational c, e, exact below the cutoff.
class TruncatedSeries {
public:
    explicit TruncatedSeries(Rational cutoff) : cutoff_(std::move(cutoff)) {}
    static TruncatedSeries monomial(const Rational& c, const Rational& e, const Rational& cutoff);

    const Rational& cutoff() const { return cutoff_; }
    const std::map<Rational, Rational>& terms() const { return terms_; }
    void add_term(const Rational& e, const Rational& c);

    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const;
    bool operator==(const TruncatedSeries& o) const { return cutoff_ == o.cutoff_ && terms_ == o.terms_; }
    /// Smallest exponent with nonzero coefficient; throws on the zero series.
    Rational order() const;
    bool is_zero() const { return terms_.empty(); }
    std::string str() const;

private:
    Rational cutoff_;
    std::map<Rational, Rational> terms_;
};

}  // namespace degenkit
