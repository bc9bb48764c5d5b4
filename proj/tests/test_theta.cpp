#include "oracles.hpp"

#include "degenkit/kernels.hpp"
#include "degenkit/theta.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace degenkit;
using namespace testkit;

namespace {

ThetaSpace space(const DegenerationDatum& d, long l, long m) { return theta_space(nefc_kit(d, l), m); }

// Orbit of the leading term under S_y, using only psi and tau of the datum itself.
// Returns false if the box was too small to be sure of every term below the cutoff.
bool orbit_series(const ThetaSpace& sp, const IntVec& x, const Rational& cutoff, long r,
                  std::map<IntVec, ValuedScalar>& out)
{
    ThetaIndex ix = decompose(sp, x);
    const auto& d = sp.kit.ext.base;
    ValuedScalar lead = sp.kit.eps(ix.u).pow(sp.m) * sp.kit.ext.tau_e_at(ix.u, ix.alpha);
    bool edge_ok = true;
    for_box(x.size(), r, [&](const IntVec& y) {
        ValuedScalar c = lead * d.psi_at(y).pow(sp.modulus) * d.tau_at(y, x);
        bool edge = false;
        for (auto& yi : y) edge = edge || abs(yi) == r;
        if (c.t_exponent() >= cutoff) return;
        if (edge) edge_ok = false;
        out[add(x, sp.L.apply(y))] = c;
    });
    return edge_ok;
}

double eigen_abs_det(const IntMatrix& L)
{
    Eigen::MatrixXd m(L.rows, L.cols);
    for (std::size_t i = 0; i < L.rows; ++i)
        for (std::size_t j = 0; j < L.cols; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = L(i, j).convert_to<double>();
    return std::abs(m.determinant());
}

}  // namespace

TEST_SUITE("theta")
{
    TEST_CASE("basis counts: formula, class enumeration and an Eigen determinant")
    {
        CHECK(basis_count(space(g1_datum(), 1, 1)).count == 4);
        CHECK(basis_count(space(hex_datum(), 1, 1)).count == 16);
        CHECK(basis_count(space(phi2_datum(), 1, 1)).count == 32);
        for (auto d : {g1_datum(), phi2_datum(), hex_datum(), two_id_datum()})
            for (long l : {1, 2})
                for (long m : {1, 2}) {
                    auto sp = space(d, l, m);
                    auto bc = basis_count(sp);
                    CHECK(bc.formula == bc.enumerated);
                    CHECK(basis_count(sp, false).enumerated == bc.enumerated);
                    CHECK(count_classes_serial(sp.L) == count_classes_parallel(sp.L));
                    CHECK(Integer(coset_representatives(sp.L).size()) == bc.count);
                    CHECK(std::llround(eigen_abs_det(sp.L)) == bc.count.convert_to<long long>());
                    CHECK(theta_indices(sp).size() == coset_representatives(sp.L).size());
                }
        for (long l : {1, 2})
            for (long m : {1, 2, 3}) {
                auto sp = space(make_datum(IntMatrix::identity(3), IntMatrix::identity(3)), l, m);
                auto bc = basis_count(sp);
                CHECK(bc.count == Integer(std::llround(eigen_abs_det(sp.L))));
                CHECK(count_classes_serial(sp.L) == bc.count);
            }
    }

    TEST_CASE("abelian multiplicity enters the count")
    {
        auto d = g1_datum();
        d.abelian.dim = 1;
        d.abelian.h0 = 3;
        auto bc = basis_count(space(d, 1, 1));
        CHECK(bc.count == 4 * 4 * 3);
        CHECK(decompose(space(d, 1, 1), iv({1})).multiplicity == 12);
    }

    TEST_CASE("g=1 series at x=0")
    {
        auto sp = space(g1_datum(), 1, 1);
        auto s = build_theta(sp, iv({0}), 20);
        // weight 4k carries t^(2k^2), coefficient 1
        CHECK(s.terms.size() == 7);
        for (long k = -3; k <= 3; ++k) {
            auto it = s.terms.find(iv({4 * k}));
            REQUIRE(it != s.terms.end());
            CHECK(it->second == ValuedScalar::t_power(2 * k * k));
        }
        CHECK(s.min_valuation() == 0);
        CHECK(s.terms.at(iv({0})) == ValuedScalar::one());
    }

    TEST_CASE("series agree with the S_y orbit of the leading term")
    {
        for (auto d : {g1_datum(), phi2_datum(), hex_datum(), two_id_datum()})
            for (long m : {1, 2}) {
                auto sp = space(d, 1, m);
                for (auto& ix : theta_indices(sp)) {
                    std::map<IntVec, ValuedScalar> ref;
                    REQUIRE(orbit_series(sp, ix.x, 12, 4, ref));
                    auto s = build_theta(sp, ix.x, 12);
                    CHECK(s.terms == ref);
                }
            }
    }

    TEST_CASE("theta laws over every weight class")
    {
        const Rational cutoff = 24;
        for (auto d : {g1_datum(), phi2_datum(), hex_datum(), two_id_datum()})
            for (long m : {1, 2}) {
                auto sp = space(d, 1, m);
                const std::size_t g = sp.kit.ext.base.rank;
                std::string why;
                CHECK_MESSAGE(interior_restriction_law(sp, cutoff, &why), why);
                for (auto& ix : theta_indices(sp)) {
                    auto s = build_theta(sp, ix.x, cutoff);
                    CHECK(!s.terms.empty());
                    CHECK_MESSAGE(leading_term_law(sp, s, &why), why);
                    for_box(g, 1, [&](const IntVec& y) { CHECK(y_invariant(sp, ix.x, cutoff, y)); });
                }
            }
    }

    TEST_CASE("delta and S actions")
    {
        auto sp = space(hex_datum(), 1, 1);
        auto s = build_theta(sp, iv({1, 0}), 20);
        for_box(2, 1, [&](const IntVec& u) {
            auto back = apply_delta_u(sp, apply_delta_u(sp, s, u), neg(u));
            CHECK(back.terms == s.terms);
            CHECK(back.x == s.x);
        });
        for_box(2, 1, [&](const IntVec& y) {
            auto a = apply_delta_u(sp, s, sp.kit.ext.beta_of(y));
            auto b = apply_Sy(sp, s, y);
            CHECK(a.terms == b.terms);
        });
        auto sp2 = space(phi2_datum(), 1, 1);
        auto s2 = build_theta(sp2, iv({3}), 30);
        auto a = apply_delta_u(sp2, s2, sp2.kit.ext.beta_of(iv({1})));
        CHECK(a.terms == apply_Sy(sp2, s2, iv({1})).terms);
    }

    TEST_CASE("leading term law catches a corrupted series")
    {
        auto sp = space(g1_datum(), 1, 1);
        auto s = build_theta(sp, iv({0}), 20);
        s.terms[iv({0})] = ValuedScalar::t_power(1);
        CHECK_FALSE(leading_term_law(sp, s));
        auto t = build_theta(sp, iv({0}), 20);
        t.terms[iv({4})] = ValuedScalar::t_power(-1);
        CHECK_FALSE(leading_term_law(sp, t));
    }

    TEST_CASE("restrictions and section counts")
    {
        // faces of the plain hexagon; the theta space only supplies m and the multiplicity
        auto hex = hex_form();
        ComplexFace top;
        for (auto& F : hex.faces_of_sigma0())
            if (F.dim == 2) top = F;
        CHECK(stratum_section_count(space(hex_datum(), 1, 1), top) == 7);
        for (auto& F : hex.faces_of_sigma0())
            if (F.dim == 1) CHECK(stratum_section_count(space(hex_datum(), 1, 2), F) == 3);
        CHECK(global_very_ample_bound(2) == 8);
        CHECK(very_ample_bound(top) == 2);
        // top cell, m = 2: kept terms are the class points inside 2 Sigma(0)
        auto sp2 = space(hex_datum(), 1, 2);
        for (auto& F : sp2.base.faces_of_sigma0())
            if (F.dim == 2) top = F;
        for (auto& ix : theta_indices(sp2)) {
            auto r = restrict_to_stratum(build_theta(sp2, ix.x, 40), top, 2);
            std::size_t direct = 0;
            std::vector<RatVec> pts;
            for (auto& v : top.vertices) pts.push_back(scale(v, Rational(2)));
            auto P = LatticePolytope::from_points(pts, 2);
            for (auto& p : P.lattice_points()) {
                IntVec diff = sub(p, ix.x);
                auto q = mat_apply(inverse(to_rat(sp2.L)), to_rat(diff));
                bool integral = true;
                for (auto& c : q) integral = integral && den(c) == 1;
                direct += integral ? 1 : 0;
            }
            CHECK(r.terms.size() == direct);
        }
        // a far weight class away from the doubled cell restricts to nothing
        auto far = restrict_to_stratum(build_theta(sp2, iv({5, 0}), 10), top, 1);
        CHECK(far.terms.empty());
    }

    TEST_CASE("undecomposable weight")
    {
        auto sp = theta_space(nefc_kit(g1_datum(), 1), 1, 1);
        CHECK_THROWS_AS(decompose(sp, iv({1, 2})), DomainError);
        CHECK_THROWS_AS(theta_space(nefc_kit(g1_datum(), 1), 0), DomainError);
    }

    TEST_CASE("complex theta at W = i")
    {
        PeriodData p;
        p.g1 = 1;
        p.W = {{Complex(0, 1)}};
        p.D = {1};
        Complex v = complex_theta(p, {0}, {Complex(0)}, 20);
        double ref = 0;
        for (long m = -20; m <= 20; ++m) ref += std::exp(-std::numbers::pi * static_cast<double>(m * m));
        CHECK(std::abs(v - Complex(ref)) < 1e-12);
        CHECK(std::abs(v.real() - 1.0864348112133080) < 1e-12);
        CHECK(std::abs(complex_theta(p, {0}, {Complex(0)}, 6) - v) < 1e-15);
        CHECK(complex_theta(p, {0}, {Complex(0)}, 20, false) == v);
    }

    TEST_CASE("complex theta against a direct box sum, and its symmetries")
    {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> zr(-0.5, 0.5);
        for (int k = 0; k < 12; ++k) {
            std::size_t g = 1 + k % 2;
            auto p = random_period(rng, g, g);
            std::vector<long> a(g);
            std::vector<Complex> z(g), mz(g);
            for (std::size_t i = 0; i < g; ++i) {
                a[i] = static_cast<long>(k) % p.D[i];
                z[i] = Complex(zr(rng), zr(rng) / 4);
                mz[i] = -z[i];
            }
            Complex v = complex_theta(p, a, z, 8);
            CHECK(std::abs(v - direct_theta(p.W, p.D, a, z, 8)) < 1e-9);
            CHECK(complex_theta(p, a, z, 8, false) == v);
            std::vector<long> zero(g, 0);
            CHECK(std::abs(complex_theta(p, zero, mz, 8) - complex_theta(p, zero, z, 8)) < 1e-9);
        }
    }

    TEST_CASE("transformation residuals")
    {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> zr(-0.3, 0.3);
        std::uniform_int_distribution<long> small(-1, 1);
        for (int k = 0; k < 10; ++k) {
            std::size_t g = 1 + k % 2;
            auto p = random_period(rng, g, k % 3 == 2 ? 1 : g);
            if (p.g1 > g) p.g1 = g;
            std::vector<Complex> z(g);
            std::vector<long> a(g), b(g), c(g);
            for (std::size_t i = 0; i < g; ++i) {
                z[i] = Complex(zr(rng), zr(rng) / 4);
                a[i] = 0;
                b[i] = small(rng);
                c[i] = small(rng);
            }
            CHECK(periodicity_residual(p, z, b, c, 10) < 1e-9);
            CHECK(characteristic_residual(p, a, z, b, c, 10) < 1e-9);
            if (p.g1 > 0 && p.g1 < g) {
                std::vector<long> r1(p.g1, 1), c1(p.g1, 1);
                std::vector<Complex> z2(g - p.g1, Complex(0.1, 0.05));
                CHECK(sigma_residual(p, r1, c1, z2, 10) < 1e-9);
            }
        }
    }

    TEST_CASE("period data are validated")
    {
        PeriodData p;
        p.W = {{Complex(0, -1)}};
        p.D = {1};
        CHECK_THROWS_AS(check_period(p), DomainError);
        p.W = {{Complex(0, 1), Complex(0.1, 0)}, {Complex(0.2, 0), Complex(0, 1)}};
        p.D = {1, 1};
        CHECK_THROWS_AS(check_period(p), DomainError);
    }

    TEST_CASE("norm ordered points")
    {
        auto pts = norm_ordered_points(2, 2);
        CHECK(pts.size() == 25);
        CHECK(pts.front() == std::vector<long>{0, 0});
        for (std::size_t i = 1; i < pts.size(); ++i) {
            long a = pts[i - 1][0] * pts[i - 1][0] + pts[i - 1][1] * pts[i - 1][1];
            long b = pts[i][0] * pts[i][0] + pts[i][1] * pts[i][1];
            CHECK(a <= b);
            if (a == b) CHECK(pts[i - 1] < pts[i]);
        }
    }
}
