#pragma once

#include "degenkit/cohomology.hpp"
#include "degenkit/datum.hpp"

#include <string>
#include <vector>

namespace degenkit {

/// Elements (a, z, alpha) of G(H): a = zeta_M^k in mu_M (M the exponent of H), z in H,
/// alpha in H^dual identified with H via alpha_k(z) = zeta_M^{sum k_i z_i M / n_i}.
struct HeisenbergElement {
    long a = 0;
    std::size_t z = 0;
    std::size_t alpha = 0;
    bool operator==(const HeisenbergElement& o) const { return a == o.a && z == o.z && alpha == o.alpha; }
};

class HeisenbergGroup {
public:
    /// Throws when |H| exceeds the cap.
    explicit HeisenbergGroup(FiniteAbelianGroup H, std::size_t cap = 8);

    const FiniteAbelianGroup& H() const { return H_; }
    long M() const { return M_; }
    std::size_t order() const { return static_cast<std::size_t>(M_) * H_.size() * H_.size(); }
    HeisenbergElement element(std::size_t i) const;
    std::size_t index(const HeisenbergElement& g) const;

    /// Exponent of alpha(z).
    long pair(std::size_t alpha, std::size_t z) const;
    /// (a,z,alpha)(b,w,beta) = (a b beta(z), z + w, alpha + beta)
    HeisenbergElement mul(const HeisenbergElement& g, const HeisenbergElement& h) const;
    HeisenbergElement inverse(const HeisenbergElement& g) const;
    /// Exponent of e_H(z + alpha, w + beta) = beta(z) alpha(w)^-1.
    long e_H(std::size_t z, std::size_t alpha, std::size_t w, std::size_t beta) const;

private:
    FiniteAbelianGroup H_;
    long M_ = 1;
};

/// rho(a,x,chi) on functions f : H -> R: (rho f)(z) = a chi(z) f(x + z).
/// Row z has its single entry zeta^{exp} in column col.
struct MonomialMatrix {
    std::vector<std::size_t> col;
    std::vector<long> exp;
    bool operator==(const MonomialMatrix& o) const { return col == o.col && exp == o.exp; }
};
MonomialMatrix rho(const HeisenbergGroup& G, const HeisenbergElement& g);
MonomialMatrix compose(const MonomialMatrix& A, const MonomialMatrix& B, long M);

struct HeisenbergReport {
    std::size_t order = 0;
    bool associative = true, identity = true, inverses = true, central = true;
    bool commutator_is_eH = true, eH_bilinear = true, eH_alternating = true, eH_nondegenerate = true;
    bool rho_homomorphism = true, weight_one = true;
    std::size_t commutant_dim = 0;
    std::string failure;
    bool ok() const
    {
        return associative && identity && inverses && central && commutator_is_eH && eH_bilinear && eH_alternating &&
               eH_nondegenerate && rho_homomorphism && weight_one && commutant_dim == 1;
    }
};
HeisenbergReport heisenberg_checks(const HeisenbergGroup& G, bool parallel = true);

/// Dimension of {C : C rho(g) = rho(g) C for all g} over a field with a primitive M-th root of unity,
/// counted as orbits of entries (i, l) -> (sigma i, sigma l) whose phase potentials close up.
std::size_t commutant_dimension(const HeisenbergGroup& G);

struct StandardBasisReport {
    std::vector<long> h1;  // divisors of X / phi(Y)
    std::vector<IntVec> reps;
    std::vector<std::size_t> terms;
    bool translation_law = true;  // shifting weights by x' with factor psi^ex(x') tau^ex(x', .) maps theta_z to theta_{z+x'}
    bool character_law = true;    // every weight of theta_z lies in z + phi(Y)
    std::string failure;
    bool ok() const { return translation_law && character_law; }
};
/// theta_z = sum_y psi^ex(z + phi(y)) w^{z + phi(y)} truncated below the cutoff, z over X / phi(Y).
/// Throws "insufficient cutoff" when some theta_z is empty, or when |X/phi(Y)| exceeds the cap.
StandardBasisReport standard_basis_check(const DegenerationDatum& d, const Rational& cutoff, std::size_t cap = 8);

}  // namespace degenkit
