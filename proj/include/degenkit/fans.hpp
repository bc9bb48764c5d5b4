#pragma once

#include "degenkit/cone.hpp"
#include "degenkit/voronoi.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace degenkit {

/// Finite fan, closed under faces. Cones sorted.
struct Fan {
    std::size_t ambient = 0;
    std::vector<RationalCone> cones;
    std::vector<RationalCone> maximal;

    /// Closure under faces of the given cones.
    static Fan from_cones(const std::vector<RationalCone>& cs, std::size_t ambient);
    bool operator==(const Fan& o) const { return ambient == o.ambient && cones == o.cones; }
    bool operator!=(const Fan& o) const { return !(*this == o); }
};

/// All faces of a cone, itself included.
std::vector<RationalCone> cone_faces(const RationalCone& c);

struct FanCheck {
    bool proper = true;    // pairwise intersections are common faces
    bool complete = true;  // every facet of a maximal cone lies in exactly two maximal cones
    std::string defect;
};
/// Completeness assumes the maximal cones are full-dimensional.
FanCheck check_fan(const Fan& f);

/// tau_{alpha,u} in R f0 + X^dual: the cone over {1} x Cut(minimal face of alpha + M u).
RationalCone tau_cone(const VoronoiForm& f, const RatVec& alpha, const IntVec& u, const Rational& e = 1);
/// Cut(Delta) for any face of the complex.
LatticePolytope cut_polytope(const VoronoiForm& f, const ComplexFace& delta, const Rational& e = 1);
/// Checks the defining inequalities e(D(y) - D(x0)) v0 + v(y - x0) >= 0 for the generators of
/// tau_{alpha,u}, over y in a box of the given radius around x0 = alpha + M u.
bool tau_cone_inequalities_hold(const VoronoiForm& f, const RatVec& alpha, const IntVec& u, long radius,
                                const Rational& e = 1);

struct KitFan {
    Fan slice;                            // Cone(Cut(tau_{alpha,0})) over vertices alpha of Sigma(0)
    std::vector<RatVec> slice_vertices;   // alpha for each entry of slice.maximal
    std::vector<RationalCone> tau_cones;  // distinct tau_{alpha,u} over the window
    FanCheck check;
};
KitFan fan_of_kit(const VoronoiForm& f, long window = 1, const Rational& e = 1);

struct FaceFans {
    Saturation sat;           // basis of X(Delta)
    std::vector<ComplexFace> faces;
    Fan fan;                  // D_Delta(Delta') over faces Delta' of Delta
    Fan fan_star;             // sigma_{Delta'}^dual
    std::vector<RationalCone> d_cones, sigma_duals;  // aligned with faces
    bool equal = false;
    FanCheck check;
};
FaceFans fan_of_face(const VoronoiForm& f, const ComplexFace& delta, const Rational& e = 1);

/// h_v(u) = u(alpha + M v) on Cone(Cut(tau_{alpha,0})).
struct SupportFunction {
    IntVec v;
    std::vector<RatVec> alphas;
    std::vector<RatVec> functionals;
    std::vector<RationalCone> cones;
    bool continuous = true;
    bool strictly_convex = true;
    std::string defect;

    /// Value through the cone containing u.
    Rational operator()(const RatVec& u) const;
};
SupportFunction support_function(const VoronoiForm& f, const IntVec& v, const Rational& e = 1);
/// {x in Delta + X(Delta)_R : u(x) >= h(u) for all u}, from the ray inequalities of the cones.
LatticePolytope sf_box(const SupportFunction& h, const ComplexFace& delta);

struct ChartMonomial {
    Rational s_exp;  // exponent of s (t up to e)
    IntVec weight;
    bool operator==(const ChartMonomial& o) const { return s_exp == o.s_exp && weight == o.weight; }
    bool operator<(const ChartMonomial& o) const
    {
        if (weight != o.weight) return weight < o.weight;
        return s_exp < o.s_exp;
    }
    std::string str() const;
};

struct ChartCell {
    IntVec w;                             // the cell Sigma(w) through alpha + M u
    RationalCone cone;                    // Cone(Sigma(w) - alpha - M u)
    std::vector<ChartMonomial> generators;  // s^{e w(x)} w^x, x over the semigroup generators
};

struct ChartPresentation {
    RatVec alpha;
    IntVec u;
    Rational e = 1;
    bool interior = false;
    RationalCone tau_dual;                   // in Z s + X
    std::vector<ChartMonomial> generators;   // algebra generators over the base
    std::vector<ChartCell> cells;            // closed-fiber pieces

    /// Closed-fiber monomial of weight x, none when x lies in no cell cone.
    std::optional<ChartMonomial> monomial(const IntVec& x) const;
    /// Closed-fiber product; none means the product vanishes.
    std::optional<ChartMonomial> product(const IntVec& x, const IntVec& y) const;
};
ChartPresentation chart_ring(const VoronoiForm& f, const RatVec& alpha, const IntVec& u, const Rational& e = 1);

/// Names: Sigma(f1-f2) for top cells, vertex[..]/edge[..]/face[..] otherwise with vertices as k*m_i.
std::string face_label(const VoronoiForm& f, const ComplexFace& delta);
std::string vertex_name(const RatVec& v);

struct StratumClass {
    std::size_t id = 0;
    int cell_dim = 0;
    int dim = 0;  // cell_dim + dim_A
    bool is_component = false;
    ComplexFace rep;
    LatticePolytope cut;
    std::string label;
    std::vector<std::size_t> faces;  // classes of the faces of rep, itself included
};

struct Stratification {
    RatMatrix period, period_inv;  // columns span M beta(Y)
    std::vector<StratumClass> classes;
    std::map<std::vector<RatVec>, std::size_t> index;

    ComplexFace canonical(const ComplexFace& d) const;
    /// Throws when d is not a face of the complex.
    std::size_t class_of(const ComplexFace& d) const;
    std::size_t components() const;
    std::vector<std::size_t> counts_by_cell_dim() const;
};
Stratification stratification(const VoronoiForm& f, const IntMatrix& beta, int dim_A = 0, const Rational& e = 1);

struct Specialization {
    ComplexFace delta;
    LatticePolytope cut;
    std::string label;
};
/// The face Delta with cutlog in the relative interior of Cut(Delta).
Specialization specialize(const VoronoiForm& f, const RatVec& cutlog, const Rational& e = 1);

/// Rational Betti numbers of the quotient cell complex.
std::vector<Integer> torus_cell_cohomology(const Stratification& s, int dim_A = 0);

}  // namespace degenkit
