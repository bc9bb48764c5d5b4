#pragma once

#include "degenkit/datum.hpp"
#include "degenkit/voronoi.hpp"

#include <doctest.h>

#include <functional>
#include <random>

namespace doctest {
template <>
struct StringMaker<degenkit::ValuedScalar> {
    static String convert(const degenkit::ValuedScalar& v) { return v.str().c_str(); }
};
template <>
struct StringMaker<degenkit::IntVec> {
    static String convert(const degenkit::IntVec& v) { return degenkit::vec_string(v).c_str(); }
};
template <>
struct StringMaker<degenkit::RatVec> {
    static String convert(const degenkit::RatVec& v) { return degenkit::vec_string(v).c_str(); }
};
}  // namespace doctest

namespace testkit {

using namespace degenkit;

inline IntMatrix imat(std::vector<std::vector<Integer>> rows) { return IntMatrix::from_rows(rows); }
inline RatVec rv(std::initializer_list<Rational> xs) { return RatVec(xs); }
inline IntVec iv(std::initializer_list<long> xs)
{
    IntVec v;
    for (long x : xs) v.push_back(x);
    return v;
}

// phi = id, B = id, form mu = [[2,1],[1,2]] taken as is: Sigma(0) is the hexagon
inline DegenerationDatum hex_datum()
{
    DegenerationDatum d = make_datum(IntMatrix::identity(2), IntMatrix::identity(2));
    d.mu_override = imat({{2, 1}, {1, 2}});
    d.plain_normalization = true;
    return d;
}

inline DegenerationDatum g1_datum() { return make_datum(imat({{1}}), imat({{1}})); }

inline VoronoiForm hex_form() { return VoronoiForm::of_kit(nefc_kit(hex_datum(), 1)); }
inline VoronoiForm g1_form() { return VoronoiForm::of_kit(nefc_kit(g1_datum(), 1)); }

inline void for_box(std::size_t n, long r, const std::function<void(const IntVec&)>& fn)
{
    IntVec v(n, Integer(-r));
    for (;;) {
        fn(v);
        std::size_t k = 0;
        while (k < n && v[k] == r) v[k++] = -r;
        if (k == n) return;
        v[k] += 1;
    }
}

inline IntMatrix adjugate(const IntMatrix& m)
{
    const std::size_t n = m.rows;
    IntMatrix a(n, n);
    if (n == 1) {
        a(0, 0) = 1;
        return a;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            Integer cof = determinant(minor);
            a(j, i) = ((i + j) % 2 ? -cof : cof);
        }
    return a;
}

// B = K adj(phi) makes B phi = det(phi) K, symmetric and positive when K is and det > 0.
// Unit parts use the same trick with a symmetric exponent matrix for the primes 2 and 3.
inline DegenerationDatum random_datum(std::mt19937_64& rng, std::size_t g, bool units = true)
{
    std::uniform_int_distribution<int> small(-1, 1), diag(1, 2), coin(0, 1);
    IntMatrix phi(g, g);
    for (;;) {
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < g; ++j) phi(i, j) = i == j ? Integer(diag(rng)) : Integer(i < j ? small(rng) : 0);
        if (determinant(phi) > 0) break;
    }
    IntMatrix K(g, g);
    for (std::size_t i = 0; i < g; ++i) {
        K(i, i) = static_cast<long>(g) + diag(rng);
        for (std::size_t j = 0; j < i; ++j) K(i, j) = K(j, i) = small(rng);
    }
    IntMatrix adj = adjugate(phi);
    DegenerationDatum d = make_datum(phi, K * adj);
    if (units) {
        for (Integer p : {Integer(2), Integer(3)}) {
            IntMatrix A(g, g);
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j <= i; ++j) A(i, j) = A(j, i) = small(rng);
            IntMatrix E = A * adj;
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t k = 0; k < g; ++k)
                    if (E(i, k) != 0) d.tau[i][k] *= ValuedScalar(1, {{p, Rational(E(i, k))}}, 0);
        }
    }
    for (auto& s : d.psi_signs) s = coin(rng) ? 1 : -1;
    return d;
}

}  // namespace testkit
