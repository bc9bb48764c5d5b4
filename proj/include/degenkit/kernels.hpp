#pragma once

#include "degenkit/valued.hpp"
#include "degenkit/voronoi.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace degenkit {

using Complex = std::complex<double>;
using CMatrix = std::vector<std::vector<Complex>>;

// Hot loops, each with a serial reference and an OpenMP version returning identical results.

/// |Z^g / L Z^g| by counting lattice points of the half-open parallelepiped L [0,1)^g.
Integer count_classes_serial(const IntMatrix& L);
Integer count_classes_parallel(const IntMatrix& L);

/// Points of [-r,r]^g in ascending Euclidean norm, ties broken lexicographically.
std::vector<std::vector<long>> norm_ordered_points(std::size_t g, long r);

/// sum over the given points m of e(W[n]/2 + n^t dz), n = m + shift, e(x) = exp(2 pi i x).
/// Summation follows the order of pts.
Complex theta_sum_serial(const CMatrix& W, const std::vector<double>& shift, const std::vector<Complex>& dz,
                         const std::vector<std::vector<long>>& pts);
Complex theta_sum_parallel(const CMatrix& W, const std::vector<double>& shift, const std::vector<Complex>& dz,
                           const std::vector<std::vector<long>>& pts);

/// Finite group given by its addition table add[x * n + y]; phi[x * n + y] the cochain.
/// act(x, a) is the action of x on the coefficient (empty = trivial).
struct TripleFailure {
    bool found = false;
    std::size_t x = 0, y = 0, z = 0;
};
using ActionTable = std::vector<int>;  // +1 trivial, -1 inversion, per element; empty = trivial
TripleFailure cocycle_triples_serial(std::size_t n, const std::vector<std::size_t>& add,
                                     const std::vector<ValuedScalar>& phi, const ActionTable& act);
TripleFailure cocycle_triples_parallel(std::size_t n, const std::vector<std::size_t>& add,
                                       const std::vector<ValuedScalar>& phi, const ActionTable& act);

/// OpenMP counterpart of d_function_checks.
DIdentityReport d_function_checks_parallel(const VoronoiForm& f, long radius, long wr);

}  // namespace degenkit
