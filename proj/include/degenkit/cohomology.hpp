#pragma once

#include "degenkit/kernels.hpp"
#include "degenkit/lattice.hpp"
#include "degenkit/valued.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace degenkit {

/// Z/n1 + Z/n2 + ..., elements indexed in mixed radix (first factor fastest).
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;
    explicit FiniteAbelianGroup(std::vector<long> divisors);
    static FiniteAbelianGroup cyclic(long n) { return FiniteAbelianGroup({n}); }

    const std::vector<long>& divisors() const { return div_; }
    /// Invariant factors d1 | d2 | ... (ones dropped).
    std::vector<long> canonical() const;
    std::size_t size() const { return size_; }
    long exponent() const;
    std::vector<long> element(std::size_t i) const;
    std::size_t index(const std::vector<long>& x) const;  // reduces mod n_i
    std::size_t add(std::size_t i, std::size_t j) const { return add_[i * size_ + j]; }
    std::size_t neg(std::size_t i) const;
    const std::vector<std::size_t>& add_table() const { return add_; }

private:
    std::vector<long> div_;
    std::size_t size_ = 1;
    std::vector<std::size_t> add_;
};

/// phi(x, y) with values in the unit group; act[x] = -1 when x acts by inversion.
struct Cochain2 {
    FiniteAbelianGroup H;
    std::vector<ValuedScalar> table;  // table[x * |H| + y]
    ActionTable act;

    static Cochain2 trivial(const FiniteAbelianGroup& H);
    const ValuedScalar& at(std::size_t x, std::size_t y) const { return table[x * H.size() + y]; }
    ValuedScalar& at(std::size_t x, std::size_t y) { return table[x * H.size() + y]; }
    bool normalized() const;
    bool operator==(const Cochain2& o) const { return table == o.table && act == o.act; }
};

struct CocycleReport {
    bool cocycle = true;
    std::string witness;  // failing triple or normalization
};
CocycleReport is_cocycle(const Cochain2& phi, bool parallel = true);

/// d psi(x, y) = psi(x + y) psi(x)^-1 x(psi(y))^-1.
Cochain2 coboundary(const FiniteAbelianGroup& H, const std::vector<ValuedScalar>& psi, const ActionTable& act = {});

/// Allowed exponent denominators per coordinate ("t" or a prime); absent means integral.
using UnitAmbient = std::map<std::string, Integer>;
/// Denominators appearing among the values.
UnitAmbient ambient_of(const std::vector<ValuedScalar>& values);
void widen(UnitAmbient& amb, const ValuedScalar& v);

struct CoboundaryResult {
    bool coboundary = false;
    std::vector<ValuedScalar> psi;  // psi(0) = 1
    std::string reason;
};

/// Solves d psi = phi coordinatewise: exponents by Smith normal form over Z, signs over GF(2).
class CoboundarySolver {
public:
    CoboundarySolver(FiniteAbelianGroup H, ActionTable act = {});
    CoboundaryResult solve(const Cochain2& phi, const UnitAmbient& amb) const;
    CoboundaryResult solve(const Cochain2& phi) const;

private:
    FiniteAbelianGroup H_;
    ActionTable act_;
    IntMatrix A_;  // rows (x,y), columns psi(1..|H|-1), exponent coordinates
    SnfDecomposition snf_;
    std::size_t rank_ = 0;
    std::vector<std::vector<int>> A2_;  // GF(2) rows
};

CoboundaryResult is_coboundary(const Cochain2& phi);

/// Omega(phi) = prod_{v < n} phi(v h, h) on a cyclic group.
ValuedScalar omega(const Cochain2& phi);
/// Psi(x)(i, j) = x^{[(i + j)/n]} for 0 <= i, j < n.
Cochain2 psi_cocycle(const ValuedScalar& x, long n);

struct SplittingRequirement {
    ValuedScalar a;            // Omega(phi)
    long n = 1;
    bool already_split = false;
    std::string radical;       // e.g. "t^(1/2)", empty when already split
    bool verified = false;     // coboundary after adjunction
    std::string obstruction;   // "requires root of unity of order 2n"
};
SplittingRequirement splitting_requirements(const Cochain2& phi);

struct SymmetricSplit {
    Cochain2 phi1, phi2;      // restrictions to H1, H2
    bool cohomologous = false;  // phi / (phi1 x phi2) is a coboundary
    std::vector<ValuedScalar> psi;
};
/// H = H1 + H2 with H1 the first k factors. Throws with a witness pair when phi is not symmetric.
SymmetricSplit symmetric_decompose(const Cochain2& phi, std::size_t k);

/// e_phi(x, y) = phi(x, y) / phi(y, x).
ValuedScalar commutator_value(const Cochain2& phi, std::size_t x, std::size_t y);

struct RadicalCover {
    long order = 1;
    bool cyclic = true;
    std::string structure;
};
RadicalCover aut_radical_cover(long n, bool base_contains_mu_n);

}  // namespace degenkit
