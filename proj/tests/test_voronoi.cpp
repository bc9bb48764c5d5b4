#include "oracles.hpp"

#include "degenkit/kernels.hpp"
#include "degenkit/voronoi.hpp"

#include <doctest.h>

#include <set>

using namespace degenkit;
using namespace testkit;

namespace {

RatMatrix random_form(std::mt19937_64& rng, std::size_t g)
{
    std::uniform_int_distribution<int> d(-1, 1);
    IntMatrix a(g, g);
    for (;;) {
        for (auto& x : a.a) x = d(rng);
        if (determinant(a) != 0) break;
    }
    IntMatrix s = a.transpose() * a;
    return to_rat(s.scaled(2));
}

}  // namespace

TEST_SUITE("voronoi")
{
    TEST_CASE("hexagon cell and skeleton")
    {
        auto f = hex_form();
        auto expect = LatticePolytope::from_points(
            {rv({1, 0}), rv({-1, 0}), rv({0, 1}), rv({0, -1}), rv({1, 1}), rv({-1, -1})}, 2);
        CHECK(f.sigma0() == expect);
        auto sk = skeleton(f.sigma0());
        REQUIRE(sk.size() == 3);
        CHECK(sk[0].size() == 6);
        CHECK(sk[1].size() == 6);
        CHECK(sk[2].size() == 1);
        CHECK(f.faces_of_sigma0().size() == 13);
        CHECK(f.sigma0().is_integral());
    }

    TEST_CASE("segment cells")
    {
        auto f = g1_form();
        CHECK(f.sigma0() == LatticePolytope::from_points({rv({-2}), rv({2})}, 1));
        auto sk = skeleton(f.sigma0());
        CHECK(sk[0].size() == 2);
        VoronoiForm half(RatMatrix::from_rows({{1}}));
        CHECK(half.sigma0() == LatticePolytope::from_points({rv({Rational(-1, 2)}), rv({Rational(1, 2)})}, 1));
        CHECK_FALSE(half.sigma0().is_integral());
        CHECK(minimal_scale(half.sigma0(), 10) == 2);
        CHECK(minimal_scale(f.sigma0(), 10) == 1);
    }

    TEST_CASE("Sigma(0) agrees with the brute constraint set")
    {
        CHECK(hex_form().sigma0() == brute_sigma0(RatMatrix::from_rows({{2, 1}, {1, 2}}), 3));
        CHECK(g1_form().sigma0() == brute_sigma0(RatMatrix::from_rows({{4}}), 4));
        RatMatrix M3 = RatMatrix::from_rows({{4, 1, 1}, {1, 4, 1}, {1, 1, 4}});
        CHECK(VoronoiForm(M3).sigma0() == brute_sigma0(M3, 2));
        CHECK(VoronoiForm(M3).sigma0().vertices().size() == 14);
        std::mt19937_64 rng(43);
        for (int i = 0; i < 10; ++i) {
            std::size_t g = 1 + i % 2;
            RatMatrix M = random_form(rng, g);
            VoronoiForm f(M);
            CHECK(f.sigma0() == brute_sigma0(M, 4));
            CHECK(f.sigma0().contains(RatVec(g, Rational(0))));
            // central symmetry
            for (auto& v : f.sigma0().vertices()) CHECK(f.sigma0().contains(scale(v, Rational(-1))));
        }
    }

    TEST_CASE("cells cover the lattice and overlap only on boundaries")
    {
        for (auto f : {hex_form(), g1_form()}) {
            for_box(f.rank(), 4, [&](const IntVec& x) {
                auto ws = f.cells_containing(to_rat(x));
                CHECK_FALSE(ws.empty());
                for (auto& w : ws) CHECK(f.cell(w).contains(to_rat(x)));
                if (ws.size() > 1)
                    for (auto& w : ws) CHECK_FALSE(f.cell(w).relint_contains(to_rat(x)));
            });
            CHECK(f.cells_containing(f.sigma0().centroid()).size() == 1);
        }
    }

    TEST_CASE("minimal face holds the point in its relative interior")
    {
        auto f = hex_form();
        for (auto x : {rv({Rational(1, 2), Rational(1)}), rv({0, 0}), rv({1, 0}), rv({Rational(1, 3), Rational(-1, 3)})}) {
            auto F = f.minimal_face(x);
            auto P = LatticePolytope::from_points(F.vertices, 2);
            CHECK(P.relint_contains(x));
        }
        CHECK(f.minimal_face(rv({Rational(1, 2), Rational(1)})).dim == 1);
        CHECK(f.minimal_face(rv({1, 0})).dim == 0);
        CHECK(f.minimal_face(rv({0, 0})).dim == 2);
    }

    TEST_CASE("star of a hexagon vertex is three cells")
    {
        auto f = hex_form();
        auto s = star(f, rv({1, 0}));
        CHECK(s.cells.size() == 3);
        for (auto& w : s.cells) CHECK(f.cell(w).contains(rv({1, 0})));
        // the translate-incidence oracle
        std::size_t n = 0;
        for_box(2, 3, [&](const IntVec& w) { n += f.cell(w).contains(rv({1, 0})) ? 1 : 0; });
        CHECK(n == 3);
    }

    TEST_CASE("containment lemmas")
    {
        CHECK(containment_lemmas(hex_form(), 3).ok());
        CHECK(containment_lemmas(g1_form(), 3).ok());
        std::mt19937_64 rng(47);
        for (int i = 0; i < 4; ++i) {
            VoronoiForm f(random_form(rng, 2));
            auto r = containment_lemmas(f, 2);
            for (auto& item : r.items) {
                INFO(item.name, " ", item.counterexample);
                CHECK(item.passed);
            }
        }
    }

    TEST_CASE("saturation and face cones")
    {
        auto edge = make_face({rv({1, 0}), rv({1, 1})});
        auto sat = saturation_lattice(edge);
        REQUIRE(sat.basis.size() == 1);
        CHECK(primitive(sat.basis[0]) == sat.basis[0]);
        CHECK(sat.basis[0][0] == 0);
        CHECK(abs(sat.basis[0][1]) == 1);
        auto pt = make_face({rv({1, 0})});
        CHECK(saturation_lattice(pt).basis.empty());
        CHECK(face_cone(pt, pt).dim() == 0);
        auto hex = hex_form().faces_of_sigma0().back();
        REQUIRE(hex.dim == 2);
        auto c = face_cone(hex, pt);
        CHECK(c.dim() == 2);
        // rays of Cone(hexagon - m1) are the two edge directions at m1
        for (auto& v : hex.vertices) CHECK(c.contains(sub(v, rv({1, 0}))));
        CHECK(c.rays().size() == 2);
    }

    TEST_CASE("semigroup generation")
    {
        auto hexf = hex_form().faces_of_sigma0().back();
        auto r2 = semigroup_generation(hexf, rv({1, 0}), 2);
        CHECK(r2.generated);
        auto seg = make_face({rv({-2}), rv({2})});
        CHECK(semigroup_generation(seg, rv({2}), 1).generated);
        auto r1 = semigroup_generation(hexf, rv({1, 0}), 1);
        if (!r1.generated) CHECK_FALSE(r1.witness.empty());
        CHECK_FALSE(r2.primitives.empty());
    }

    TEST_CASE("D function: values, well-definedness and the quadratic identity")
    {
        auto f = g1_form();
        CHECK(f.D(rv({5})) == 3);
        CHECK(f.D(rv({0})) == 0);
        CHECK(f.D(rv({2})) == 0);
        for (auto form : {hex_form(), g1_form()}) {
            for_box(form.rank(), form.rank() == 1 ? 12 : 6, [&](const IntVec& x) {
                auto vals = brute_D(form, to_rat(x), 8);
                REQUIRE(vals.size() == 1);
                CHECK(*vals.begin() == form.D(to_rat(x)));
            });
            auto s = d_function_checks(form, 4, 2);
            auto p = d_function_checks_parallel(form, 4, 2);
            CHECK(s.ok());
            CHECK(p.ok());
            CHECK(s.points == p.points);
            CHECK(s.identities == p.identities);
        }
    }
}
