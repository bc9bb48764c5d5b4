#pragma once

#include "degenkit/arith.hpp"

#include <optional>

namespace degenkit {

/// Half-space normal . x + offset >= 0 (or = 0 for an equation).
struct Facet {
    IntVec normal;
    Rational offset;
    bool operator==(const Facet& o) const { return normal == o.normal && offset == o.offset; }
};

/// Extreme rays of the pointed cone {z : A z >= 0}; A must have full column rank d.
std::vector<IntVec> extreme_rays(const std::vector<IntVec>& A, std::size_t d);

struct FaceRecord {
    std::vector<std::size_t> vertices;  // indices into LatticePolytope::vertices
    int dim = 0;
};

/// Bounded rational polytope with matching V- and H-representations.
class LatticePolytope {
public:
    LatticePolytope() = default;

    static LatticePolytope from_points(const std::vector<RatVec>& pts, std::size_t ambient);
    /// Bounded, full-dimensional intersection of half-spaces.
    static LatticePolytope from_inequalities(const std::vector<Facet>& ineqs, std::size_t ambient);

    std::size_t ambient() const { return ambient_; }
    int dim() const { return dim_; }
    const std::vector<RatVec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<Facet>& equations() const { return equations_; }

    bool contains(const RatVec& x) const;
    bool contains_scaled(const RatVec& x, const Rational& k) const;  // x in k*P
    bool relint_contains(const RatVec& x) const;
    bool is_integral() const;
    LatticePolytope translated(const RatVec& v) const;
    LatticePolytope scaled(const Rational& k) const;
    RatVec centroid() const;
    /// Integer points of the polytope.
    std::vector<IntVec> lattice_points() const;
    void bounding_box(RatVec& lo, RatVec& hi) const;

    /// All nonempty faces (including the polytope itself), sorted by dimension then vertex list.
    std::vector<FaceRecord> faces() const;
    std::vector<std::size_t> tight_facets(const RatVec& x) const;

    bool operator==(const LatticePolytope& o) const { return vertices_ == o.vertices_; }

private:
    std::size_t ambient_ = 0;
    int dim_ = -1;
    std::vector<RatVec> vertices_;  // sorted lexicographically
    std::vector<Facet> facets_;
    std::vector<Facet> equations_;
};

/// Affine rank (dimension of the affine hull) of a point set; -1 when empty.
int affine_dimension(const std::vector<RatVec>& pts);

bool lex_less(const RatVec& a, const RatVec& b);

}  // namespace degenkit
