#pragma once

#include "degenkit/arith.hpp"

#include <optional>

namespace degenkit {

/// U * M * V = D with U, V unimodular and D diagonal with d1 | d2 | ...
struct SnfDecomposition {
    IntMatrix U, D, V;
    IntVec divisors;
};

SnfDecomposition smith_normal_form(const IntMatrix& m);

/// |Z^n / M Z^n| for square nonsingular M.
Integer cokernel_index(const IntMatrix& m);

struct BetaMu {
    IntMatrix beta;  // columns are beta(y_i) in the dual basis
    Integer N;
    IntMatrix mu;    // X^dual -> X
};

/// beta = B^t, N = |det beta|, mu = phi * beta^-1 * N.
BetaMu derive_beta_mu(const IntMatrix& phi, const IntMatrix& B);

/// Representatives 0 <= r_i < d_i pulled back to Z^n, one per class of Z^n / L Z^n.
std::vector<IntVec> coset_representatives(const IntMatrix& L);

/// Canonical representative of x modulo the lattice spanned by the columns of L.
RatVec reduce_mod_lattice(const RatMatrix& L, const RatMatrix& Linv, const RatVec& x);
IntVec reduce_mod_lattice(const RatMatrix& L, const RatMatrix& Linv, const IntVec& x);

/// Basis (columns) of the saturation in Z^n of the span of the given integer vectors,
/// together with a unimodular matrix whose first columns are that basis.
struct Saturation {
    std::vector<IntVec> basis;
    IntMatrix completion;  // unimodular, first basis.size() columns = basis
};
Saturation saturate(const std::vector<IntVec>& gens, std::size_t n);

struct DefinitenessReport {
    bool positive_definite = false;
    IntVec witness;  // y with y^t S y <= 0 when not positive definite
    Rational witness_value = 0;
};

/// Exact test through symmetric Gaussian elimination (LDL^t).
DefinitenessReport positive_definite(const RatMatrix& s);

/// A rational lambda > 0 with S - lambda*I positive definite (S symmetric PD).
Rational certified_min_eigen_bound(const RatMatrix& s);

}  // namespace degenkit
