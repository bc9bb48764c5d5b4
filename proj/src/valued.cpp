#include "degenkit/valued.hpp"

#include <cctype>

namespace degenkit {

std::map<Integer, int> factor_integer(Integer n)
{
    std::map<Integer, int> f;
    n = abs(n);
    if (n == 0) throw DomainError("zero has no factorization");
    for (Integer p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            f[p] += 1;
            n /= p;
        }
        if (p > Integer(1000000)) throw DomainError("factorization bound exceeded");
    }
    if (n > 1) f[n] += 1;
    return f;
}

ValuedScalar::ValuedScalar(int sign, std::map<Integer, Rational> unit, Rational t_exponent)
    : sign_(sign >= 0 ? 1 : -1), unit_(std::move(unit)), t_(std::move(t_exponent))
{
    normalize();
}

void ValuedScalar::normalize()
{
    for (auto it = unit_.begin(); it != unit_.end();) {
        if (it->first < 2) throw DomainError("unit base must be a prime >= 2");
        if (it->second == 0)
            it = unit_.erase(it);
        else
            ++it;
    }
}

ValuedScalar ValuedScalar::t_power(const Rational& e) { return ValuedScalar(1, {}, e); }

ValuedScalar ValuedScalar::from_rational(const Rational& q)
{
    if (q == 0) throw DomainError("zero is not a valued scalar");
    std::map<Integer, Rational> u;
    for (auto& [p, e] : factor_integer(num(q))) u[p] += e;
    for (auto& [p, e] : factor_integer(den(q))) u[p] -= e;
    return ValuedScalar(q < 0 ? -1 : 1, u, 0);
}

ValuedScalar ValuedScalar::operator*(const ValuedScalar& o) const
{
    ValuedScalar r = *this;
    r *= o;
    return r;
}

ValuedScalar& ValuedScalar::operator*=(const ValuedScalar& o)
{
    sign_ *= o.sign_;
    for (auto& [p, e] : o.unit_) unit_[p] += e;
    t_ += o.t_;
    normalize();
    return *this;
}

ValuedScalar ValuedScalar::inverse() const
{
    ValuedScalar r = *this;
    for (auto& [p, e] : r.unit_) e = -e;
    r.t_ = -r.t_;
    return r;
}

ValuedScalar ValuedScalar::operator/(const ValuedScalar& o) const { return *this * o.inverse(); }

ValuedScalar ValuedScalar::pow(const Integer& k) const
{
    ValuedScalar r = *this;
    if (sign_ < 0 && k % 2 == 0) r.sign_ = 1;
    for (auto& [p, e] : r.unit_) e *= Rational(k);
    r.t_ *= Rational(k);
    r.normalize();
    return r;
}

ValuedScalar ValuedScalar::with_sign(int s) const
{
    ValuedScalar r = *this;
    r.sign_ = s >= 0 ? 1 : -1;
    return r;
}

bool ValuedScalar::is_rational_monomial() const
{
    if (den(t_) != 1) return false;
    for (auto& [p, e] : unit_)
        if (den(e) != 1) return false;
    return true;
}

Rational ValuedScalar::unit_value() const
{
    Rational v = sign_;
    for (auto& [p, e] : unit_) {
        if (den(e) != 1) throw DomainError("unit part is not rational: " + str());
        Integer k = num(e);
        Integer pk = boost::multiprecision::pow(p, static_cast<unsigned>(to_ll(abs(k))));
        v *= k >= 0 ? Rational(pk) : Rational(1, pk);
    }
    return v;
}

bool ValuedScalar::operator==(const ValuedScalar& o) const
{
    return sign_ == o.sign_ && t_ == o.t_ && unit_ == o.unit_;
}

bool ValuedScalar::operator<(const ValuedScalar& o) const
{
    if (t_ != o.t_) return t_ < o.t_;
    if (sign_ != o.sign_) return sign_ < o.sign_;
    return unit_ < o.unit_;
}

std::string ValuedScalar::str() const
{
    std::string s = sign_ < 0 ? "-1" : "1";
    for (auto& [p, e] : unit_) s += " * " + p.str() + "^(" + to_string(e) + ")";
    if (t_ != 0) s += " * t^(" + to_string(t_) + ")";
    return s;
}

namespace {

std::string strip(const std::string& s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

Rational parse_exponent(const std::string& s)
{
    std::string e = strip(s);
    if (e.size() >= 2 && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
    return parse_rational(e);
}

}  // namespace

ValuedScalar ValuedScalar::parse(const std::string& text)
{
    std::string s = strip(text);
    if (s.empty()) throw DomainError("empty valued scalar");
    ValuedScalar r;
    std::size_t pos = 0;
    bool first = true;
    while (pos <= s.size()) {
        std::size_t star = s.find('*', pos);
        std::string tok = strip(s.substr(pos, star == std::string::npos ? std::string::npos : star - pos));
        pos = star == std::string::npos ? s.size() + 1 : star + 1;
        if (tok.empty()) throw DomainError("malformed valued scalar '" + text + "'");
        if (first && (tok == "-" || tok == "+")) {
            r.sign_ = tok == "-" ? -1 : 1;
            first = false;
            continue;
        }
        first = false;
        std::string base = tok, expo = "1";
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            base = strip(tok.substr(0, caret));
            expo = tok.substr(caret + 1);
        }
        Rational e = parse_exponent(expo);
        if (base == "t") {
            r.t_ += e;
        } else {
            Rational b = parse_rational(base);
            if (b == 0) throw DomainError("zero factor in valued scalar '" + text + "'");
            if (b < 0) {
                if (den(e) != 1) throw DomainError("fractional power of a negative base in '" + text + "'");
                if (num(e) % 2 != 0) r.sign_ = -r.sign_;
                b = -b;
            }
            ValuedScalar f = from_rational(b);
            for (auto& [p, k] : f.unit_) r.unit_[p] += k * e;
        }
    }
    r.normalize();
    return r;
}

ValuedScalar vs_mul(const ValuedScalar& a, const ValuedScalar& b) { return a * b; }

ValuedScalar vs_root(const ValuedScalar& a, const Integer& e)
{
    if (e <= 0) throw DomainError("root order must be positive");
    if (a.sign() < 0 && e % 2 == 0) throw DomainError("sign obstruction: needs root of unity");
    std::map<Integer, Rational> u;
    for (auto& [p, x] : a.unit_part()) u[p] = x / Rational(e);
    return ValuedScalar(a.sign(), u, a.t_exponent() / Rational(e));
}

Rational vs_valuation(const ValuedScalar& a) { return a.t_exponent(); }

TruncatedSeries TruncatedSeries::monomial(const Rational& c, const Rational& e, const Rational& cutoff)
{
    TruncatedSeries s(cutoff);
    s.add_term(e, c);
    return s;
}

void TruncatedSeries::add_term(const Rational& e, const Rational& c)
{
    if (e >= cutoff_ || c == 0) return;
    Rational& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const
{
    TruncatedSeries r(std::min(cutoff_, o.cutoff_));
    for (auto& [e, c] : terms_) r.add_term(e, c);
    for (auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const
{
    // a term of the product is exact below min(cut_a + ord_b, cut_b + ord_a)
    Rational cut = std::min(cutoff_, o.cutoff_);
    if (!is_zero() && !o.is_zero()) cut = std::min(cutoff_ + o.order(), o.cutoff_ + order());
    TruncatedSeries r(cut);
    for (auto& [e1, c1] : terms_)
        for (auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

Rational TruncatedSeries::order() const
{
    if (terms_.empty()) throw DomainError("order of the zero series");
    return terms_.begin()->first;
}

std::string TruncatedSeries::str() const
{
    std::string s;
    for (auto& [e, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += to_string(c) + "*t^(" + to_string(e) + ")";
    }
    if (s.empty()) s = "0";
    return s + " + O(t^(" + to_string(cutoff_) + "))";
}

}  // namespace degenkit
