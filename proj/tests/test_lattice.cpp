#include "support.hpp"

#include "degenkit/lattice.hpp"

#include <doctest.h>

#include <Eigen/Dense>

using namespace degenkit;
using namespace testkit;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int span)
{
    std::uniform_int_distribution<int> d(-span, span);
    IntMatrix m(r, c);
    for (auto& x : m.a) x = d(rng);
    return m;
}

// leading principal minors, computed directly
bool sylvester(const RatMatrix& s)
{
    for (std::size_t k = 1; k <= s.rows; ++k) {
        RatMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m(i, j) = s(i, j);
        if (determinant(m) <= 0) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("lattice")
{
    TEST_CASE("rational text round trip")
    {
        for (const char* s : {"0", "1", "-3", "2/3", "-7/12", "123456789012345678901234567891/2"}) {
            Rational q = parse_rational(s);
            CHECK(to_string(q) == s);
        }
        CHECK(parse_rational("4/6") == Rational(2, 3));
        CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
        CHECK_THROWS_AS(parse_rational("x"), DomainError);
        CHECK_THROWS_AS(parse_rational(""), DomainError);
    }

    TEST_CASE("floor, ceil and primitive vectors")
    {
        CHECK(floor_q(Rational(-1, 2)) == -1);
        CHECK(ceil_q(Rational(-1, 2)) == 0);
        CHECK(floor_q(Rational(7, 3)) == 2);
        CHECK(ceil_q(Rational(6, 3)) == 2);
        CHECK(primitive(iv({4, -6, 0})) == iv({2, -3, 0}));
        CHECK(primitive(rv({Rational(1, 2), Rational(1, 3)})) == iv({3, 2}));
    }

    TEST_CASE("smith normal form reconstructs and divides")
    {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t r = 1 + trial % 3, c = 1 + (trial / 3) % 3;
            IntMatrix m = random_matrix(rng, r, c, 6);
            auto s = smith_normal_form(m);
            CHECK(s.U * m * s.V == s.D);
            CHECK(abs(determinant(s.U)) == 1);
            CHECK(abs(determinant(s.V)) == 1);
            for (std::size_t i = 0; i < s.D.rows; ++i)
                for (std::size_t j = 0; j < s.D.cols; ++j)
                    if (i != j) CHECK(s.D(i, j) == 0);
            for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i)
                if (s.divisors[i] != 0) CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
            if (r == c) {
                Integer prod = 1;
                for (std::size_t i = 0; i < r; ++i) prod *= s.D(i, i);
                CHECK(abs(prod) == abs(determinant(m)));
            }
            // first divisor is the gcd of the entries
            Integer g = 0;
            for (auto& x : m.a) g = gcd(g, x);
            if (!s.divisors.empty()) CHECK(abs(s.divisors[0]) == g);
        }
    }

    TEST_CASE("beta, N and mu")
    {
        auto bm = derive_beta_mu(imat({{2}}), imat({{2}}));
        CHECK(bm.beta == imat({{2}}));
        CHECK(bm.N == 2);
        CHECK(bm.mu == imat({{2}}));
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            auto d = random_datum(rng, 1 + trial % 3, false);
            IntMatrix B = d.valuation_matrix();
            auto b = derive_beta_mu(d.phi, B);
            CHECK(b.beta == B.transpose());
            CHECK(b.N == abs(determinant(b.beta)));
            CHECK(b.mu * b.beta == d.phi.scaled(b.N));
        }
    }

    TEST_CASE("coset representatives are complete and distinct")
    {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 15; ++trial) {
            std::size_t n = 1 + trial % 3;
            IntMatrix L = random_matrix(rng, n, n, 3);
            if (determinant(L) == 0) continue;
            auto reps = coset_representatives(L);
            CHECK(Integer(reps.size()) == abs(determinant(L)));
            RatMatrix Li = inverse(to_rat(L));
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t j = i + 1; j < reps.size(); ++j)
                    CHECK_FALSE(is_integral(mat_apply(Li, to_rat(sub(reps[i], reps[j])))));
            // reduce_mod_lattice lands on the same class
            IntVec x = iv({5, -4, 3});
            x.resize(n);
            IntVec red = reduce_mod_lattice(to_rat(L), Li, x);
            CHECK(is_integral(mat_apply(Li, to_rat(sub(red, x)))));
        }
    }

    TEST_CASE("saturation")
    {
        auto s = saturate({iv({2, 0})}, 2);
        REQUIRE(s.basis.size() == 1);
        CHECK(primitive(s.basis[0]) == s.basis[0]);
        CHECK(abs(s.basis[0][0]) == 1);
        CHECK(abs(determinant(s.completion)) == 1);
        auto t = saturate({iv({2, 2, 0}), iv({0, 2, 2})}, 3);
        CHECK(t.basis.size() == 2);
        CHECK(abs(determinant(t.completion)) == 1);
        // every generator is an integral combination of the basis
        IntMatrix Bm = IntMatrix::from_columns(t.basis, 3);
        for (auto& gvec : {iv({1, 1, 0}), iv({0, 1, 1})}) {
            RatVec c;
            RatMatrix Bq = to_rat(Bm);
            REQUIRE(solve(Bq, to_rat(gvec), c));
            CHECK(is_integral(c));
        }
    }

    TEST_CASE("positive definiteness agrees with Sylvester and Eigen")
    {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 80; ++trial) {
            std::size_t n = 1 + trial % 4;
            IntMatrix a = random_matrix(rng, n, n, 3);
            IntMatrix s = a.transpose() * a;
            if (trial % 3 == 0)
                for (std::size_t i = 0; i < n; ++i) s(i, i) -= 2;
            RatMatrix sq = to_rat(s);
            auto r = positive_definite(sq);
            CHECK(r.positive_definite == sylvester(sq));
            if (!r.positive_definite) {
                RatVec w = to_rat(r.witness);
                CHECK(dot(w, mat_apply(sq, w)) <= 0);
                CHECK_FALSE(is_zero(r.witness));
            } else {
                Eigen::MatrixXd e(n, n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) e(i, j) = static_cast<double>(s(i, j));
                double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(e).eigenvalues().minCoeff();
                Rational b = certified_min_eigen_bound(sq);
                CHECK(b > 0);
                CHECK(static_cast<double>(b) <= lmin + 1e-9);
            }
        }
    }
}
