#pragma once

#include "degenkit/arith.hpp"

#include <vector>

namespace degenkit {

/// Rational polyhedral cone = Cone(rays) + span(lineality), kept in a canonical form:
/// lineality basis in primitive reduced echelon form, rays primitive, orthogonal to the
/// lineality space and sorted. The H-description is cached alongside.
class RationalCone {
public:
    RationalCone() = default;
    static RationalCone generated_by(const std::vector<IntVec>& gens, std::size_t ambient);
    static RationalCone zero(std::size_t ambient) { return generated_by({}, ambient); }

    std::size_t ambient() const { return ambient_; }
    const std::vector<IntVec>& rays() const { return rays_; }
    const std::vector<IntVec>& lineality() const { return lineality_; }
    /// Inner facet normals (y . x >= 0) and equations (y . x = 0).
    const std::vector<IntVec>& inequalities() const { return ineqs_; }
    const std::vector<IntVec>& equations() const { return eqs_; }

    int dim() const;
    bool is_pointed() const { return lineality_.empty(); }
    bool contains(const RatVec& x) const;
    bool contains(const IntVec& x) const;
    bool relint_contains(const RatVec& x) const;
    RationalCone dual() const;
    RationalCone intersect(const RationalCone& o) const;
    /// All generators including +-lineality.
    std::vector<IntVec> generators() const;
    /// Faces of dimension dim()-1.
    std::vector<RationalCone> facets() const;

    bool operator==(const RationalCone& o) const
    {
        return ambient_ == o.ambient_ && rays_ == o.rays_ && lineality_ == o.lineality_;
    }
    bool operator!=(const RationalCone& o) const { return !(*this == o); }
    bool operator<(const RationalCone& o) const
    {
        if (lineality_ != o.lineality_) return lineality_ < o.lineality_;
        return rays_ < o.rays_;
    }
    std::string str() const;

private:
    std::size_t ambient_ = 0;
    std::vector<IntVec> rays_, lineality_, ineqs_, eqs_;
};

/// Dual-cone generators {y : y . g >= 0 for all g}: pointed rays and lineality basis.
void dual_generators(const std::vector<IntVec>& gens, std::size_t ambient, std::vector<IntVec>& rays,
                     std::vector<IntVec>& lineality);

/// Canonical basis (primitive RREF rows) of the span of the given vectors.
std::vector<IntVec> canonical_span_basis(const std::vector<IntVec>& vs, std::size_t ambient);

/// Hilbert basis of the semigroup C cap Z^n for a pointed cone C; serial reference.
std::vector<IntVec> hilbert_basis(const RationalCone& c);

/// Minimal generating set of C cap Z^n for any cone (lineality handled by a lattice basis
/// of its saturation and lifts of the quotient Hilbert basis).
std::vector<IntVec> semigroup_generators(const RationalCone& c);

}  // namespace degenkit
