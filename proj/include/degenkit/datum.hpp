#pragma once

#include "degenkit/lattice.hpp"
#include "degenkit/valued.hpp"

#include <optional>
#include <string>
#include <vector>

namespace degenkit {

struct AbelianDescriptor {
    int dim = 0;
    Integer h0 = 1;
};

using ValuedTable = std::vector<std::vector<ValuedScalar>>;

/// Split degeneration data on X = Y = Z^g.
/// phi has columns phi(y_i); tau[i][j] = tau(y_i, x_j).
struct DegenerationDatum {
    std::size_t rank = 0;
    IntMatrix phi;
    ValuedTable tau;
    std::vector<int> psi_signs;
    AbelianDescriptor abelian;
    std::optional<IntMatrix> mu_override;  // geometry-only form input
    bool plain_normalization = false;      // cells Sigma(0) + l*mu(w)
    std::vector<int> chi_signs;            // sign character on X^dual, empty = trivial

    /// tau(y, x) extended bilinearly.
    ValuedScalar tau_at(const IntVec& y, const IntVec& x) const;
    /// Symmetric quadratic psi with psi(y_i)^2 = tau(y_i, phi y_i).
    ValuedScalar psi_at(const IntVec& y) const;
    /// Valuation matrix B(i,j) = v_t tau(y_i, x_j); throws if not integral.
    IntMatrix valuation_matrix() const;
    IntVec phi_of(const IntVec& y) const;
};

/// tau(y,x) = t^{y^t B x} with trivial units.
DegenerationDatum make_datum(const IntMatrix& phi, const IntMatrix& B);

struct ValidationCheck {
    std::string name;
    bool passed = true;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool ok() const;
    /// Message of the first failing check, empty if none.
    std::string first_failure() const;
};

ValidationReport validate(const DegenerationDatum& d);
/// Throws DomainError with the first failing message.
void require_valid(const DegenerationDatum& d);

struct ExtendedDatum {
    DegenerationDatum base;
    BetaMu bm;
    ValuedTable tau_e;  // tau_e[i][j] = tau^e(f_i, x_j)
    Integer e_zeta = 1;
    std::vector<std::string> radicals;     // adjoined unit radicals, e.g. "2^(1/2)"
    std::vector<std::string> annotations;  // symbolic root-of-unity twists
    std::vector<int> chi;                  // sign character on f_i

    ValuedScalar tau_e_at(const IntVec& u, const IntVec& x) const;
    /// psi^e(u) = chi(u) tau^e(u, mu u).
    ValuedScalar psi_e(const IntVec& u) const;
    IntVec beta_of(const IntVec& y) const;
    IntVec mu_of(const IntVec& u) const;
    int chi_at(const IntVec& u) const;
};

ExtendedDatum extend_to_dual(const DegenerationDatum& d);

struct FullExtension {
    std::size_t rank = 0;
    ValuedTable tau_ex;                    // tau_ex[i][j] = tau^ex(x_i, x_j)
    std::vector<ValuedScalar> psi_basis;   // psi^ex on the SNF basis x'_s
    IntMatrix basis;                       // columns x'_s
    IntMatrix basis_inv;                   // coordinates in the x' basis
    IntVec divisors;                       // phi(y'_s) = e_s x'_s
    std::vector<std::string> annotations;

    ValuedScalar tau_at(const IntVec& x, const IntVec& z) const;
    ValuedScalar psi_at(const IntVec& x) const;
};

FullExtension extend_to_X(const DegenerationDatum& d);

/// Level-l kit: eps_l = (psi^e)^{2Nl}, E_l(u) = 2Nl u(mu u), cells Sigma(0) + 4Nl mu(w).
struct NefcKit {
    ExtendedDatum ext;
    Integer l = 1;

    const Integer& N() const { return ext.bm.N; }
    ValuedScalar eps(const IntVec& u) const;
    Integer E(const IntVec& u) const;
    /// Translation matrix of the cell complex: 4Nl*mu, or l*mu_override in plain mode.
    RatMatrix form() const;
    /// The same for level l*m in kit normalization (theta tiling).
    RatMatrix form_at_level(const Integer& m) const;
};

NefcKit nefc_kit(const DegenerationDatum& d, const Integer& l);

/// Datum of the m-th power of the polarization: phi -> m phi, psi -> psi^m.
DegenerationDatum power_datum(const DegenerationDatum& d, const Integer& m);

}  // namespace degenkit
