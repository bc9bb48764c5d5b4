#include "oracles.hpp"

#include "degenkit/datum.hpp"

#include <doctest.h>

using namespace degenkit;
using namespace testkit;

TEST_SUITE("datum")
{
    TEST_CASE("validation examples")
    {
        CHECK(validate(g1_datum()).ok());
        auto bad = make_datum(imat({{1}}), imat({{-1}}));
        auto r = validate(bad);
        CHECK_FALSE(r.ok());
        CHECK(r.first_failure() == "positivity fails at y=(1)");
        auto indefinite = make_datum(IntMatrix::identity(2), imat({{2, 1}, {1, 0}}));
        CHECK(validate(indefinite).first_failure().rfind("positivity fails", 0) == 0);
        auto asym = make_datum(IntMatrix::identity(2), imat({{2, 1}, {0, 2}}));
        CHECK(validate(asym).first_failure() == "symmetry fails at (y1,y2)");
        auto singular = make_datum(imat({{1, 1}, {1, 1}}), IntMatrix::identity(2));
        CHECK_FALSE(validate(singular).ok());
        CHECK_THROWS_WITH_AS(require_valid(bad), "positivity fails at y=(1)", DomainError);
        auto d = g1_datum();
        d.tau[0][0] = ValuedScalar::parse("-1 * t^(1)");
        CHECK(validate(d).first_failure().find("negative") != std::string::npos);
    }

    TEST_CASE("random data are valid")
    {
        std::mt19937_64 rng(17);
        for (int i = 0; i < 30; ++i) {
            auto d = random_datum(rng, 1 + i % 3);
            INFO(matrix_string(d.phi));
            CHECK(validate(d).ok());
        }
    }

    TEST_CASE("psi squares to tau on the diagonal and is even")
    {
        std::mt19937_64 rng(23);
        for (int i = 0; i < 8; ++i) {
            auto d = random_datum(rng, 1 + i % 3);
            for_box(d.rank, 2, [&](const IntVec& y) {
                ValuedScalar p = d.psi_at(y);
                CHECK(p * p == d.tau_at(y, d.phi_of(y)));
                CHECK(p == d.psi_at(neg(y)));
            });
        }
        CHECK(g1_datum().psi_at(iv({1})) == ValuedScalar::t_power(Rational(1, 2)));
    }

    TEST_CASE("dual extension: hand values")
    {
        auto e = extend_to_dual(make_datum(IntMatrix::identity(2), IntMatrix::identity(2)));
        CHECK(e.e_zeta == 1);
        CHECK(e.tau_e == make_datum(IntMatrix::identity(2), IntMatrix::identity(2)).tau);
        auto e2 = extend_to_dual(make_datum(imat({{2}}), imat({{2}})));
        CHECK(e2.bm.beta == imat({{2}}));
        CHECK(e2.bm.N == 2);
        CHECK(e2.bm.mu == imat({{2}}));
        CHECK(e2.tau_e_at(iv({1}), iv({1})) == ValuedScalar::t_power(1));
        for (long u = -3; u <= 3; ++u) CHECK(e2.psi_e(iv({u})) == ValuedScalar::t_power(2 * u * u));
    }

    TEST_CASE("dual extension agrees with the rooted oracle and restricts back")
    {
        std::mt19937_64 rng(29);
        for (int i = 0; i < 8; ++i) {
            auto d = random_datum(rng, 1 + i % 3);
            auto e = extend_to_dual(d);
            const Integer N = e.bm.N;
            for_box(d.rank, 1, [&](const IntVec& u) {
                for_box(d.rank, 1, [&](const IntVec& x) {
                    CHECK(e.tau_e_at(u, x) == tau_e_oracle(d, u, x));
                    CHECK(e.tau_e_at(u, x).t_exponent() == dot(u, x));
                });
            });
            for_box(d.rank, 1, [&](const IntVec& y) {
                for_box(d.rank, 1, [&](const IntVec& x) { CHECK(e.tau_e_at(e.beta_of(y), x) == d.tau_at(y, x)); });
                CHECK(e.psi_e(e.beta_of(y)) == d.psi_at(y).pow(2 * N));
            });
            for_box(d.rank, 2, [&](const IntVec& u) {
                CHECK(e.psi_e(u) == e.psi_e(neg(u)));
                CHECK(e.psi_e(u) * e.psi_e(u) == e.tau_e_at(u, e.mu_of(u).empty() ? u : scale(e.mu_of(u), 2)));
            });
        }
    }

    TEST_CASE("extension to X: hand values")
    {
        auto id = extend_to_X(g1_datum());
        CHECK(id.tau_at(iv({1}), iv({1})) == ValuedScalar::t_power(1));
        CHECK(id.psi_at(iv({1})) == g1_datum().psi_at(iv({1})));
        auto x2 = extend_to_X(make_datum(imat({{2}}), imat({{2}})));
        CHECK(x2.tau_at(iv({1}), iv({1})) == ValuedScalar::t_power(1));
        CHECK(x2.psi_at(iv({1})) == ValuedScalar::t_power(Rational(1, 2)));
        CHECK(x2.divisors == iv({2}));
    }

    TEST_CASE("extension to X: identities")
    {
        std::mt19937_64 rng(31);
        for (int i = 0; i < 8; ++i) {
            auto d = random_datum(rng, 1 + i % 3);
            auto x = extend_to_X(d);
            INFO(matrix_string(d.phi), " B=", matrix_string(d.valuation_matrix()));
            for (auto& note : x.annotations) CHECK(note.find("root of unity") != std::string::npos);
            const bool twisted = !x.annotations.empty();
            for_box(d.rank, 1, [&](const IntVec& y) {
                // a twisted extension lives over a root of unity the sign field cannot carry
                if (twisted)
                    CHECK(x.psi_at(d.phi_of(y)).with_sign(1) == d.psi_at(y).with_sign(1));
                else
                    CHECK(x.psi_at(d.phi_of(y)) == d.psi_at(y));
                for_box(d.rank, 1, [&](const IntVec& z) { CHECK(x.tau_at(d.phi_of(y), z) == d.tau_at(y, z)); });
            });
            for_box(d.rank, 1, [&](const IntVec& a) {
                for_box(d.rank, 1, [&](const IntVec& b) {
                    CHECK(x.psi_at(add(a, b)) == x.psi_at(a) * x.psi_at(b) * x.tau_at(a, b));
                    CHECK(x.tau_at(a, b) == x.tau_at(b, a));
                });
            });
        }
    }

    TEST_CASE("extension to X: a negative psi on an even divisor is flagged")
    {
        auto d = make_datum(imat({{2}}), imat({{2}}));
        d.psi_signs = {-1};
        REQUIRE(validate(d).ok());
        auto x = extend_to_X(d);
        REQUIRE(x.annotations.size() == 1);
        CHECK(x.annotations[0].find("order 8") != std::string::npos);
        auto odd = make_datum(imat({{3}}), imat({{3}}));
        odd.psi_signs = {-1};
        auto xo = extend_to_X(odd);
        CHECK(xo.annotations.empty());
        for (long y = -2; y <= 2; ++y) CHECK(xo.psi_at(odd.phi_of(iv({y}))) == odd.psi_at(iv({y})));
    }

    TEST_CASE("kit: Sigma for g = 1 and the epsilon laws")
    {
        auto kit = nefc_kit(g1_datum(), 1);
        for (long u = -3; u <= 3; ++u) CHECK(kit.E(iv({u})) == 2 * u * u);
        std::mt19937_64 rng(37);
        for (int i = 0; i < 6; ++i) {
            auto d = random_datum(rng, 1 + i % 2);
            for (long l : {1L, 2L}) {
                auto k = nefc_kit(d, l);
                const Integer N = k.N();
                for_box(d.rank, 1, [&](const IntVec& y) {
                    CHECK(k.eps(k.ext.beta_of(y)) == d.psi_at(y).pow(4 * N * N * l));
                });
                for_box(d.rank, 2, [&](const IntVec& u) {
                    for_box(d.rank, 2, [&](const IntVec& v) {
                        CHECK(k.eps(add(u, v)) == k.eps(u) * k.eps(v) * k.ext.tau_e_at(u, k.ext.mu_of(v)).pow(4 * N * l));
                    });
                });
            }
        }
        CHECK_THROWS_AS(nefc_kit(g1_datum(), 0), DomainError);
    }

    TEST_CASE("power datum")
    {
        auto p = power_datum(g1_datum(), 2);
        CHECK(p.phi == imat({{2}}));
        CHECK(p.psi_at(iv({1})) == ValuedScalar::t_power(1));
        CHECK(power_datum(g1_datum(), 1).phi == g1_datum().phi);
        std::mt19937_64 rng(41);
        for (int i = 0; i < 8; ++i) {
            auto d = random_datum(rng, 1 + i % 3);
            for (long m : {2L, 3L}) {
                auto pm = power_datum(d, m);
                CHECK(validate(pm).ok());
                for_box(d.rank, 1, [&](const IntVec& y) {
                    CHECK(pm.psi_at(y) == d.psi_at(y).pow(m));
                    for_box(d.rank, 1, [&](const IntVec& x) { CHECK(pm.tau_at(y, x) == d.tau_at(y, x)); });
                });
            }
        }
    }
}
