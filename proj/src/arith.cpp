#include "degenkit/arith.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace degenkit {

Integer gcd(const Integer& a, const Integer& b)
{
    Integer x = abs(a), y = abs(b);
    while (y != 0) {
        Integer r = x % y;
        x = y;
        y = r;
    }
    return x;
}

Integer lcm(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0) return 0;
    return abs(a / gcd(a, b) * b);
}

Integer floor_q(const Rational& q)
{
    Integer n = num(q), d = den(q);
    Integer f = n / d;
    if (n % d != 0 && n < 0) f -= 1;
    return f;
}

Integer ceil_q(const Rational& q)
{
    Integer n = num(q), d = den(q);
    Integer f = n / d;
    if (n % d != 0 && n > 0) f += 1;
    return f;
}

int sgn(const Integer& a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }
int sgn(const Rational& a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }

long long to_ll(const Integer& a)
{
    if (a > Integer(std::numeric_limits<long long>::max()) || a < Integer(std::numeric_limits<long long>::min()))
        throw DomainError("integer out of machine range: " + to_string(a));
    return a.convert_to<long long>();
}

static std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

static Integer parse_integer(const std::string& s)
{
    if (s.empty()) throw DomainError("empty integer literal");
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') i = 1;
    if (i == s.size()) throw DomainError("malformed integer '" + s + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw DomainError("malformed integer '" + s + "'");
    Integer v(s[0] == '+' ? s.substr(1) : s);
    return v;
}

Rational parse_rational(std::string_view sv)
{
    std::string s = trim(sv);
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(s));
    Integer p = parse_integer(trim(s.substr(0, slash)));
    Integer q = parse_integer(trim(s.substr(slash + 1)));
    if (q == 0) throw DomainError("zero denominator in '" + s + "'");
    return Rational(p, q);
}

std::string to_string(const Integer& a) { return a.str(); }

std::string to_string(const Rational& q)
{
    if (den(q) == 1) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

RatVec to_rat(const IntVec& v) { return RatVec(v.begin(), v.end()); }

bool is_integral(const RatVec& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return den(q) == 1; });
}

IntVec to_int(const RatVec& v)
{
    IntVec r;
    r.reserve(v.size());
    for (auto& q : v) {
        if (den(q) != 1) throw DomainError("expected integral vector, got " + vec_string(v));
        r.push_back(num(q));
    }
    return r;
}

Integer content(const IntVec& v)
{
    Integer g = 0;
    for (auto& x : v) g = gcd(g, x);
    return g;
}

IntVec primitive(const IntVec& v)
{
    Integer g = content(v);
    if (g == 0) return v;
    IntVec r(v);
    for (auto& x : r) x /= g;
    return r;
}

IntVec primitive(const RatVec& v)
{
    Integer l = 1;
    for (auto& q : v) l = lcm(l, den(q));
    IntVec r;
    r.reserve(v.size());
    for (auto& q : v) r.push_back(num(q * l));
    return primitive(r);
}

Rational dot(const RatVec& a, const RatVec& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Integer dot(const IntVec& a, const IntVec& b)
{
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const IntVec& a, const RatVec& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
    return s;
}

RatVec add(const RatVec& a, const RatVec& b)
{
    RatVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

RatVec sub(const RatVec& a, const RatVec& b)
{
    RatVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

RatVec scale(const RatVec& a, const Rational& s)
{
    RatVec r(a);
    for (auto& x : r) x *= s;
    return r;
}

IntVec add(const IntVec& a, const IntVec& b)
{
    IntVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

IntVec sub(const IntVec& a, const IntVec& b)
{
    IntVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

IntVec scale(const IntVec& a, const Integer& s)
{
    IntVec r(a);
    for (auto& x : r) x *= s;
    return r;
}

IntVec neg(const IntVec& a) { return scale(a, Integer(-1)); }

bool is_zero(const IntVec& v)
{
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool is_zero(const RatVec& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Integer norm_inf(const IntVec& v)
{
    Integer m = 0;
    for (auto& x : v) m = std::max(m, Integer(abs(x)));
    return m;
}

std::string vec_string(const IntVec& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + ")";
}

std::string vec_string(const RatVec& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

RatMatrix to_rat(const IntMatrix& m)
{
    RatMatrix r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i];
    return r;
}

bool is_integral(const RatMatrix& m) { return is_integral(m.a); }

IntMatrix to_int(const RatMatrix& m)
{
    IntMatrix r(m.rows, m.cols);
    r.a = to_int(m.a);
    return r;
}

RatVec mat_apply(const RatMatrix& m, const IntVec& v) { return m.apply(to_rat(v)); }
RatVec mat_apply(const IntMatrix& m, const RatVec& v) { return to_rat(m).apply(v); }
RatVec mat_apply(const RatMatrix& m, const RatVec& v) { return m.apply(v); }

Integer determinant(const IntMatrix& m)
{
    if (!m.is_square()) throw DomainError("determinant of non-square matrix");
    std::size_t n = m.rows;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    IntMatrix a = m;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::vector<std::size_t> rref(RatMatrix& a)
{
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
        std::size_t p = r;
        while (p < a.rows && a(p, c) == 0) ++p;
        if (p == a.rows) continue;
        for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(r, j), a(p, j));
        Rational inv = 1 / a(r, c);
        for (std::size_t j = 0; j < a.cols; ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = 0; j < a.cols; ++j) a(i, j) -= f * a(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

Rational determinant(const RatMatrix& m)
{
    if (!m.is_square()) throw DomainError("determinant of non-square matrix");
    RatMatrix a = m;
    std::size_t n = m.rows;
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rational f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

RatMatrix inverse(const RatMatrix& m)
{
    if (!m.is_square()) throw DomainError("inverse of non-square matrix");
    std::size_t n = m.rows;
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw DomainError("singular matrix");
    RatMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
    return r;
}

std::size_t rank(const RatMatrix& m)
{
    RatMatrix a = m;
    return rref(a).size();
}

std::vector<RatVec> nullspace(const RatMatrix& m)
{
    RatMatrix a = m;
    auto piv = rref(a);
    std::vector<bool> is_piv(m.cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_piv[f]) continue;
        RatVec v(m.cols, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a(r, f);
        basis.push_back(v);
    }
    return basis;
}

std::vector<std::size_t> independent_subset(const std::vector<RatVec>& vs)
{
    std::vector<std::size_t> idx;
    std::vector<RatVec> cur;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        cur.push_back(vs[i]);
        if (rank(RatMatrix::from_rows(cur)) == cur.size())
            idx.push_back(i);
        else
            cur.pop_back();
    }
    return idx;
}

bool solve(const RatMatrix& m, const RatVec& b, RatVec& x)
{
    RatMatrix aug(m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
        aug(i, m.cols) = b[i];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == m.cols) return false;
    x.assign(m.cols, Rational(0));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, m.cols);
    return true;
}

std::string matrix_string(const IntMatrix& m)
{
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows; ++i) {
        s += (i ? "," : "");
        s += "[";
        for (std::size_t j = 0; j < m.cols; ++j) s += (j ? "," : "") + m(i, j).str();
        s += "]";
    }
    return s + "]";
}

}  // namespace degenkit
