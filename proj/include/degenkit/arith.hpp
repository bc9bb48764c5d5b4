#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace degenkit {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;

/// Raised for every mathematically meaningful failure (bad input, obstruction).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer floor_q(const Rational& q);
Integer ceil_q(const Rational& q);
int sgn(const Integer& a);
int sgn(const Rational& a);
long long to_ll(const Integer& a);

Rational parse_rational(std::string_view s);
std::string to_string(const Integer& a);
std::string to_string(const Rational& q);

RatVec to_rat(const IntVec& v);
bool is_integral(const RatVec& v);
IntVec to_int(const RatVec& v);
/// Scale a rational vector to a primitive integer vector with the same direction.
IntVec primitive(const RatVec& v);
IntVec primitive(const IntVec& v);
Integer content(const IntVec& v);

Rational dot(const RatVec& a, const RatVec& b);
Integer dot(const IntVec& a, const IntVec& b);
Rational dot(const IntVec& a, const RatVec& b);
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const RatVec& a, const Rational& s);
IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(const IntVec& a, const Integer& s);
IntVec neg(const IntVec& a);
bool is_zero(const IntVec& v);
bool is_zero(const RatVec& v);
Integer norm_inf(const IntVec& v);

std::string vec_string(const IntVec& v);
std::string vec_string(const RatVec& v);

/// Dense row-major matrix.
template <class T>
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, T(0)) {}

    T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& r)
    {
        Matrix m(r.size(), r.empty() ? 0 : r[0].size());
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (r[i].size() != m.cols) throw DomainError("ragged matrix");
            for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = r[i][j];
        }
        return m;
    }

    static Matrix from_columns(const std::vector<std::vector<T>>& c, std::size_t nrows)
    {
        Matrix m(nrows, c.size());
        for (std::size_t j = 0; j < c.size(); ++j)
            for (std::size_t i = 0; i < nrows; ++i) m(i, j) = c[j][i];
        return m;
    }

    std::vector<T> row(std::size_t i) const { return {a.begin() + i * cols, a.begin() + (i + 1) * cols}; }
    std::vector<T> col(std::size_t j) const
    {
        std::vector<T> c(rows);
        for (std::size_t i = 0; i < rows; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Matrix transpose() const
    {
        Matrix t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const
    {
        if (cols != o.rows) throw DomainError("matrix dimension mismatch");
        Matrix r(rows, o.cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                const T& x = (*this)(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < o.cols; ++j) r(i, j) += x * o(k, j);
            }
        return r;
    }

    std::vector<T> apply(const std::vector<T>& v) const
    {
        if (v.size() != cols) throw DomainError("matrix-vector dimension mismatch");
        std::vector<T> r(rows, T(0));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Matrix scaled(const T& s) const
    {
        Matrix r = *this;
        for (auto& x : r.a) x *= s;
        return r;
    }

    bool is_square() const { return rows == cols; }
    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rat(const IntMatrix& m);
bool is_integral(const RatMatrix& m);
IntMatrix to_int(const RatMatrix& m);
RatVec mat_apply(const RatMatrix& m, const IntVec& v);
RatVec mat_apply(const IntMatrix& m, const RatVec& v);
RatVec mat_apply(const RatMatrix& m, const RatVec& v);

Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);
/// Throws DomainError("singular matrix") when not invertible.
RatMatrix inverse(const RatMatrix& m);
/// Row-reduce in place to reduced echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a);
std::size_t rank(const RatMatrix& m);
/// Basis of {x : m x = 0}, rows in reduced echelon order.
std::vector<RatVec> nullspace(const RatMatrix& m);
/// Indices of a maximal linearly independent subset, greedy in input order.
std::vector<std::size_t> independent_subset(const std::vector<RatVec>& vs);
/// Solve m x = b for some x when consistent; empty optional otherwise.
bool solve(const RatMatrix& m, const RatVec& b, RatVec& x);

std::string matrix_string(const IntMatrix& m);

}  // namespace degenkit
