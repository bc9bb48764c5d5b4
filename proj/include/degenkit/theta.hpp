#pragma once

#include "degenkit/datum.hpp"
#include "degenkit/kernels.hpp"
#include "degenkit/voronoi.hpp"

#include <map>
#include <string>
#include <vector>

namespace degenkit {

/// Level data for sections of the m-th power (kit normalization, totally degenerate or abelian by count only).
struct ThetaSpace {
    NefcKit kit;
    Integer m = 1;
    Integer modulus;      // 4 N^2 l m
    IntMatrix Mp;         // 4 N l m mu
    IntMatrix L;          // 4 N^2 l m phi, columns
    RatMatrix S;          // 2 N l m beta^t mu beta: quadratic part of the valuation in y
    VoronoiForm level;    // Sigma_{lm}
    VoronoiForm base;     // Sigma_l
    Integer multiplicity;  // h0 (4 N^2 l m)^dim_A
};
ThetaSpace theta_space(const NefcKit& kit, const Integer& m, std::size_t rank_cap = 6);

struct BasisCount {
    Integer formula;     // (4N^2 lm)^(g + dim_A) |X/phi(Y)| h0
    Integer enumerated;  // points of X / 4N^2 lm phi(Y), times the multiplicity
    Integer count;
};
/// Throws DomainError("internal: ...") when the two counts differ.
BasisCount basis_count(const ThetaSpace& sp, bool parallel = true);

struct ThetaIndex {
    IntVec x;
    IntVec alpha;  // in Sigma_{lm}(0)
    IntVec u;      // x = alpha + 4Nlm mu(u)
    Integer multiplicity;
};
/// Least u (lexicographic) among the cells of the level-lm tiling through x.
ThetaIndex decompose(const ThetaSpace& sp, const IntVec& x);
/// One index per class of X / 4N^2 lm phi(Y).
std::vector<ThetaIndex> theta_indices(const ThetaSpace& sp);

struct FormalThetaSeries {
    Integer m = 1;
    IntVec x, alpha, u;
    Rational cutoff;
    std::map<IntVec, ValuedScalar> terms;  // weight -> coefficient of w^weight theta^m

    Rational min_valuation() const;
    bool same_terms(const FormalThetaSeries& o) const { return terms == o.terms; }
};

/// Terms at v = u + beta(y): weight alpha + 4Nlm mu(v), coefficient eps(v)^m tau^e(v, alpha),
/// kept when the valuation m E(v) + v(alpha) is below the cutoff.
FormalThetaSeries build_theta(const ThetaSpace& sp, const IntVec& x, const Rational& cutoff);
/// The y with valuation below the cutoff, found through an eigenvalue bound and filtered exactly.
std::vector<IntVec> theta_support(const ThetaSpace& sp, const ThetaIndex& ix, const Rational& cutoff);

FormalThetaSeries apply_Sy(const ThetaSpace& sp, const FormalThetaSeries& s, const IntVec& y);
FormalThetaSeries apply_delta_u(const ThetaSpace& sp, const FormalThetaSeries& s, const IntVec& u);
FormalThetaSeries truncate(const FormalThetaSeries& s, const Rational& cutoff);

/// Builds deep enough that apply_Sy(y) covers the cutoff, truncates, compares with build_theta(x, cutoff).
bool y_invariant(const ThetaSpace& sp, const IntVec& x, const Rational& cutoff, const IntVec& y);
/// The term at x is eps(u)^m tau^e(u, alpha); in the chart of u every other term has
/// valuation minus m E(u) minus u(weight - 4Nlm mu(u)) at least 0, and the term at x exactly 0.
bool leading_term_law(const ThetaSpace& sp, const FormalThetaSeries& s, std::string* why = nullptr);

/// Keeps the terms whose weight lies in m * Delta.
FormalThetaSeries restrict_to_stratum(const FormalThetaSeries& s, const ComplexFace& delta, const Integer& m);
/// For each face Delta of Sigma_l(0) and x in relint(m Delta) cap X the restriction is the single term w^x.
bool interior_restriction_law(const ThetaSpace& sp, const Rational& cutoff, std::string* why = nullptr);

Integer stratum_section_count(const ThetaSpace& sp, const ComplexFace& delta);
Integer very_ample_bound(const ComplexFace& delta);
Integer global_very_ample_bound(std::size_t g);

/// Complex period data: g = g1 + g2, W = D T symmetric with Im W > 0.
struct PeriodData {
    std::size_t g1 = 0;
    CMatrix W;
    std::vector<long> D;
    std::size_t g() const { return W.size(); }
};
/// Throws unless W is square symmetric with positive definite imaginary part and D > 0.
void check_period(const PeriodData& p);

/// theta_a(z) = sum_m e(W[m + D^-1 a]/2 + (D m + a)^t z), m in [-radius, radius]^g, ascending norm.
Complex complex_theta(const PeriodData& p, const std::vector<long>& a, const std::vector<Complex>& z, long radius,
                      bool parallel = true);
/// sum over a in prod [0, D_i) of theta_a.
Complex complex_theta_total(const PeriodData& p, const std::vector<Complex>& z, long radius);
/// |theta_a(z + D^-1 b + T D^-1 c) - e(a^t D^-1 b - W[D^-1 c]/2 - c^t z) theta_{a+c}(z)|
double characteristic_residual(const PeriodData& p, const std::vector<long>& a, const std::vector<Complex>& z,
                               const std::vector<long>& b, const std::vector<long>& c, long radius);
/// |theta(z + b + T c) - e(-W[c]/2 - (D c)^t z) theta(z)|, theta the sum of all theta_a.
double periodicity_residual(const PeriodData& p, const std::vector<Complex>& z, const std::vector<long>& b,
                            const std::vector<long>& c, long radius);
/// Fourier coefficient of e(r1^t z1) in theta, a function of z2.
Complex sigma_coefficient(const PeriodData& p, const std::vector<long>& r1, const std::vector<Complex>& z2,
                          long radius);
/// |sigma_{r1 + D1 c1}(z2) - e(W11[c1]/2) e(r1^t T11 c1) sigma_{r1}(z2 + T21 c1)|
double sigma_residual(const PeriodData& p, const std::vector<long>& r1, const std::vector<long>& c1,
                      const std::vector<Complex>& z2, long radius);

}  // namespace degenkit
