#pragma once

#include "degenkit/cone.hpp"
#include "degenkit/datum.hpp"
#include "degenkit/lattice.hpp"
#include "degenkit/polytope.hpp"

#include <string>
#include <vector>

namespace degenkit {

/// A face of the cell complex, as its sorted vertex list.
struct ComplexFace {
    std::vector<RatVec> vertices;
    int dim = 0;

    bool operator==(const ComplexFace& o) const { return vertices == o.vertices; }
    bool operator<(const ComplexFace& o) const
    {
        if (dim != o.dim) return dim < o.dim;
        return vertices < o.vertices;
    }
    ComplexFace translated(const RatVec& v) const;
    RatVec centroid() const;
    bool contains_vertex_set(const ComplexFace& sub) const;
};

ComplexFace make_face(std::vector<RatVec> vertices);

/// Quadratic form E(u) = u^t M u / 2 on X^dual = Z^g and its Voronoi tiling
/// Sigma(w) = Sigma(0) + M w, Sigma(0) = {x : E(u) + u(x) >= 0 for all u}.
class VoronoiForm {
public:
    VoronoiForm() = default;
    explicit VoronoiForm(RatMatrix M, std::size_t rank_cap = 6);
    static VoronoiForm of_kit(const NefcKit& kit, std::size_t rank_cap = 6);

    std::size_t rank() const { return M_.rows; }
    const RatMatrix& M() const { return M_; }
    const RatMatrix& M_inverse() const { return Minv_; }
    Rational E(const IntVec& u) const;
    RatVec shift(const IntVec& w) const;

    const LatticePolytope& sigma0() const { return sigma0_; }
    /// Constraint box radius at which the H-description was certified.
    const Integer& certified_radius() const { return cert_radius_; }
    LatticePolytope cell(const IntVec& w) const { return sigma0_.translated(shift(w)); }

    /// All w with x in Sigma(w).
    std::vector<IntVec> cells_containing(const RatVec& x) const;
    /// Sigma(w) meets Sigma(0).
    bool meets(const IntVec& w) const;
    /// The face of the complex whose relative interior contains x.
    ComplexFace minimal_face(const RatVec& x) const;
    /// Faces of Sigma(0), sorted by dimension.
    std::vector<ComplexFace> faces_of_sigma0() const;
    /// Cells containing every vertex of F.
    std::vector<IntVec> cells_containing_face(const ComplexFace& F) const;
    /// Cut(F) = Conv(-e w : F in Sigma(w)).
    LatticePolytope cut(const ComplexFace& F, const Rational& e = 1) const;
    /// D(x) = E(z) + z(gamma) for x = gamma + M z, gamma in Sigma(0); checked over every decomposition.
    Rational D(const RatVec& x) const;

private:
    RatMatrix M_, Minv_;
    LatticePolytope sigma0_;
    Integer cert_radius_ = 0;
    Rational cell_radius_ = 0;  // max |M^-1 v|_inf over vertices
};

LatticePolytope sigma_zero(const NefcKit& kit, std::size_t rank_cap = 6);

/// Least l0 <= bound with l0 * Sigma(0) integral (Sigma scales linearly with the level).
Integer minimal_scale(const LatticePolytope& sigma_level_one, const Integer& bound);

/// Faces grouped by dimension: result[i] = Sk^i.
std::vector<std::vector<ComplexFace>> skeleton(const LatticePolytope& p);

struct StarReport {
    std::vector<IntVec> cells;
    std::vector<LatticePolytope> polytopes;
};
StarReport star(const VoronoiForm& f, const RatVec& alpha);

struct LemmaCheck {
    std::string name;
    std::size_t cases = 0;
    bool passed = true;
    std::string counterexample;
};
struct ContainmentReport {
    std::vector<LemmaCheck> items;
    bool ok() const;
};
ContainmentReport containment_lemmas(const VoronoiForm& f, long window);

/// Saturation X(Delta) of the span of Delta - Delta.
Saturation saturation_lattice(const ComplexFace& delta);
/// Coordinates of an integer vector of X(Delta)_R in the saturation basis.
IntVec lattice_coordinates(const Saturation& sat, const RatVec& v);

/// sigma_{Delta'} = Cone(Delta - a; a in Delta') in ambient coordinates.
RationalCone face_cone(const ComplexFace& delta, const ComplexFace& sub);
/// The same cone in X(Delta) coordinates.
RationalCone face_cone_local(const ComplexFace& delta, const ComplexFace& sub);

struct SemigroupReport {
    bool generated = true;
    std::vector<IntVec> primitives;  // Hilbert basis of Cone(Delta - alpha), ambient coordinates
    std::vector<IntVec> generators;  // m(Delta - alpha) cap X minus 0, ambient coordinates
    IntVec witness;                  // a primitive element outside the generated semigroup
};
SemigroupReport semigroup_generation(const ComplexFace& delta, const RatVec& alpha, const Integer& m);

struct DIdentityReport {
    std::size_t points = 0, identities = 0;
    bool well_defined = true, cocycle = true;
    std::string counterexample;
    bool ok() const { return well_defined && cocycle; }
};
/// Well-definedness of D on |x|_inf <= radius and D(x + Mw) - D(x) = E(w) + w(x) for |w|_inf <= wr.
DIdentityReport d_function_checks(const VoronoiForm& f, long radius, long wr);

/// Integer points of a box [-r, r]^n.
std::vector<IntVec> box_points(std::size_t n, long r);

}  // namespace degenkit
