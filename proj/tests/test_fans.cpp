#include "oracles.hpp"

#include "degenkit/fans.hpp"

#include <doctest.h>

using namespace degenkit;
using namespace testkit;

TEST_SUITE("fans")
{
    TEST_CASE("specialization table of the hexagon")
    {
        auto f = hex_form();
        for (auto& row : table_rows()) {
            INFO(row.name);
            auto sp = specialize(f, row.cutlog);
            CHECK(sp.label == row.label);
            CHECK(sp.cut == LatticePolytope::from_points(row.cut, 2));
            CHECK(sp.cut == brute_cut(f, sp.delta, 3));
            CHECK(sp.cut.relint_contains(row.cutlog));
        }
        // other samples of the open cut cells land on the same stratum
        CHECK(specialize(f, rv({Rational(-1, 10), Rational(-7, 10)})).label == "vertex[-m3]");
        CHECK(specialize(f, rv({Rational(-9, 10), 0})).label == "edge[m1,-m3]");
        CHECK(specialize(f, rv({Rational(-1, 5), Rational(-4, 5)})).label == "edge[-m3,-2m3]");
    }

    TEST_CASE("cut polytopes of every face agree with the brute definition")
    {
        for (auto f : {hex_form(), g1_form()})
            for (auto& F : f.faces_of_sigma0()) {
                INFO(face_label(f, F));
                CHECK(cut_polytope(f, F) == brute_cut(f, F, 3));
                CHECK(f.cut(F) == cut_polytope(f, F));
            }
    }

    TEST_CASE("fan of the edge [m1,-m3]")
    {
        auto f = hex_form();
        auto delta = face_with_label(f, "edge[m1,-m3]");
        auto ff = fan_of_face(f, delta);
        REQUIRE(ff.sat.basis.size() == 1);
        // X(Delta) is spanned by f2; cones expressed on that basis, mapped back to the plane
        IntVec b = ff.sat.basis[0];
        CHECK(b == iv({0, b[1] == 1 ? 1 : -1}));
        std::vector<IntVec> rays;
        for (auto& c : ff.fan.cones)
            for (auto& r : c.rays()) rays.push_back(scale(b, r[0]));
        CHECK(ff.fan.cones.size() == 3);
        CHECK(ff.fan.cones[0].dim() == 0);
        std::sort(rays.begin(), rays.end());
        CHECK(rays == std::vector<IntVec>{iv({0, -1}), iv({0, 1})});
        CHECK(ff.check.complete);
        CHECK(ff.equal);
    }

    TEST_CASE("Fan equals Fan* on every hexagon face")
    {
        auto f = hex_form();
        for (auto& F : f.faces_of_sigma0()) {
            auto ff = fan_of_face(f, F);
            INFO(face_label(f, F));
            CHECK(ff.equal);
            CHECK(ff.check.proper);
            CHECK(ff.check.complete);
            // the dual of the local face cone, recomputed here
            for (std::size_t i = 0; i < ff.faces.size(); ++i)
                if (!ff.sat.basis.empty()) CHECK(face_cone_local(F, ff.faces[i]).dual() == ff.d_cones[i]);
        }
    }

    TEST_CASE("kit fan is a complete fan")
    {
        for (auto f : {hex_form(), g1_form()}) {
            auto kf = fan_of_kit(f, 1);
            CHECK(kf.check.proper);
            CHECK(kf.check.complete);
            CHECK(kf.slice_vertices.size() == kf.slice.maximal.size());
            const std::size_t g = f.rank();
            // sampled cover: each lattice point lies in a maximal cone, in the interior of at most one
            for_box(g, 3, [&](const IntVec& x) {
                std::size_t in = 0, inside = 0;
                for (auto& c : kf.slice.maximal) {
                    in += c.contains(x) ? 1 : 0;
                    inside += c.relint_contains(to_rat(x)) ? 1 : 0;
                }
                CHECK(in >= 1);
                CHECK(inside <= 1);
            });
        }
        CHECK(fan_of_kit(hex_form(), 1).slice.maximal.size() == 6);
    }

    TEST_CASE("fan json-free checks: a broken fan is caught")
    {
        auto a = RationalCone::generated_by({iv({1, 0}), iv({0, 1})}, 2);
        auto b = RationalCone::generated_by({iv({1, 1}), iv({-1, 0})}, 2);
        auto chk = check_fan(Fan::from_cones({a, b}, 2));
        CHECK_FALSE(chk.proper);
        auto half = check_fan(Fan::from_cones({a}, 2));
        CHECK_FALSE(half.complete);
    }

    TEST_CASE("tau cone inequalities")
    {
        auto f = hex_form();
        for (auto& a : f.sigma0().lattice_points())
            for_box(2, 1, [&](const IntVec& u) { CHECK(tau_cone_inequalities_hold(f, to_rat(a), u, 3)); });
        auto g = g1_form();
        for (long a = -2; a <= 2; ++a) CHECK(tau_cone_inequalities_hold(g, rv({a}), iv({1}), 3));
    }

    TEST_CASE("support functions")
    {
        for (auto f : {hex_form(), g1_form()})
            for_box(f.rank(), 1, [&](const IntVec& v) {
                auto h = support_function(f, v);
                CHECK(h.continuous);
                CHECK(h.strictly_convex);
                for (auto& F : f.faces_of_sigma0()) {
                    auto G = F.translated(f.shift(v));
                    CHECK(sf_box(h, G) == LatticePolytope::from_points(G.vertices, f.rank()));
                }
                // h(u) = least value of u on the cell, found directly
                for_box(f.rank(), 2, [&](const IntVec& u) {
                    Rational best;
                    bool first = true;
                    LatticePolytope cell = f.cell(v);
                    for (auto& a : cell.vertices()) {
                        Rational val = dot(u, a);
                        if (first || val < best) best = val;
                        first = false;
                    }
                    CHECK(h(to_rat(u)) == best);
                });
            });
        auto h1 = support_function(g1_form(), iv({0}));
        CHECK(h1(rv({3})) == -6);
        CHECK(h1(rv({-1})) == -2);
    }

    TEST_CASE("chart monomials: cone route against the D slope and the dual cone")
    {
        auto f = hex_form();
        const Rational eps(1, 1000);
        for (auto& a : f.sigma0().lattice_points())
            for_box(2, 1, [&](const IntVec& u) {
                auto cp = chart_ring(f, to_rat(a), u);
                RatVec x0 = add(to_rat(a), f.shift(u));
                for_box(2, 2, [&](const IntVec& x) {
                    auto m = cp.monomial(x);
                    REQUIRE(m.has_value());
                    // D is affine on cells, so its slope along x at x0 is the s exponent
                    Rational slope = (f.D(add(x0, scale(to_rat(x), eps))) - f.D(x0)) / eps;
                    CHECK(m->s_exp == slope);
                    // least s power making s^a w^x regular in the chart
                    IntVec probe = x;
                    probe.insert(probe.begin(), Integer(0));
                    Integer lo = -20;
                    for (; lo <= 20; ++lo) {
                        probe[0] = lo;
                        if (cp.tau_dual.contains(probe)) break;
                    }
                    CHECK(Rational(lo) == m->s_exp);
                });
            });
    }

    TEST_CASE("chart at an interior point and at a vertex")
    {
        auto f = hex_form();
        auto vtx = chart_ring(f, rv({1, 1}), iv({0, 0}));
        CHECK_FALSE(vtx.interior);
        CHECK(vtx.cells.size() == 3);
        auto mid = chart_ring(f, rv({0, 0}), iv({1, 0}));
        CHECK(mid.interior);
        CHECK(mid.cells.size() == 1);
        CHECK_THROWS_AS(chart_ring(f, rv({2, 0}), iv({0, 0})), DomainError);
        // products stay inside one cell cone
        for_box(2, 1, [&](const IntVec& x) {
            for_box(2, 1, [&](const IntVec& y) {
                auto p = vtx.product(x, y);
                if (!p) return;
                auto mx = vtx.monomial(x), my = vtx.monomial(y);
                CHECK(p->s_exp == mx->s_exp + my->s_exp);
            });
        });
    }

    TEST_CASE("stratification and cellular cohomology")
    {
        auto f = hex_form();
        auto st = stratification(f, IntMatrix::identity(2));
        CHECK(st.classes.size() == 6);
        CHECK(st.components() == 1);
        CHECK(st.counts_by_cell_dim() == std::vector<std::size_t>{2, 3, 1});
        CHECK(torus_cell_cohomology(st) == std::vector<Integer>{1, 2, 1});
        auto s1 = stratification(g1_form(), imat({{1}}));
        CHECK(torus_cell_cohomology(s1) == std::vector<Integer>{1, 1});
        // Euler characteristic of the cell count vanishes on a torus
        Integer chi = 0;
        auto by = st.counts_by_cell_dim();
        for (std::size_t k = 0; k < by.size(); ++k) chi += (k % 2 ? -1 : 1) * Integer(by[k]);
        CHECK(chi == 0);
        for (auto& c : st.classes) CHECK(st.class_of(c.rep) == c.id);
    }
}
