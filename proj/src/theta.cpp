#include "degenkit/theta.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace degenkit {

namespace {

Integer ipow(const Integer& b, std::size_t k)
{
    Integer r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= b;
    return r;
}

IntVec mat_int(const IntMatrix& m, const IntVec& v) { return m.apply(v); }

Complex e_of(const Complex& x) { return std::exp(Complex(0, 2 * std::numbers::pi) * x); }

Rational term_valuation(const ThetaSpace& sp, const IntVec& v, const IntVec& alpha)
{
    return Rational(sp.m * sp.kit.E(v) + dot(v, alpha));
}

}  // namespace

ThetaSpace theta_space(const NefcKit& kit, const Integer& m, std::size_t rank_cap)
{
    if (m < 1) throw DomainError("m must be >= 1");
    ThetaSpace sp;
    sp.kit = kit;
    sp.m = m;
    const Integer N = kit.N();
    const auto& base = kit.ext.base;
    sp.modulus = 4 * N * N * kit.l * m;
    sp.Mp = to_int(kit.form_at_level(m));
    sp.L = base.phi.scaled(sp.modulus);
    const IntMatrix& beta = kit.ext.bm.beta;
    sp.S = to_rat(beta.transpose() * kit.ext.bm.mu * beta).scaled(Rational(2 * N * kit.l * m));
    sp.level = VoronoiForm(kit.form_at_level(m), rank_cap);
    sp.base = VoronoiForm(kit.form_at_level(1), rank_cap);
    sp.multiplicity = base.abelian.h0 * ipow(sp.modulus, static_cast<std::size_t>(base.abelian.dim));
    return sp;
}

BasisCount basis_count(const ThetaSpace& sp, bool parallel)
{
    const auto& base = sp.kit.ext.base;
    BasisCount c;
    c.formula = ipow(sp.modulus, base.rank + static_cast<std::size_t>(base.abelian.dim)) * abs(determinant(base.phi)) *
                base.abelian.h0;
    Integer classes = parallel ? count_classes_parallel(sp.L) : count_classes_serial(sp.L);
    c.enumerated = classes * sp.multiplicity;
    if (c.formula != c.enumerated)
        throw DomainError("internal: basis count " + c.formula.str() + " differs from enumeration " +
                          c.enumerated.str());
    c.count = c.formula;
    return c;
}

ThetaIndex decompose(const ThetaSpace& sp, const IntVec& x)
{
    if (x.size() != sp.kit.ext.base.rank) throw DomainError("weight has wrong length");
    auto cells = sp.level.cells_containing(to_rat(x));
    if (cells.empty()) throw DomainError("weight " + vec_string(x) + " not decomposable");
    std::sort(cells.begin(), cells.end());
    ThetaIndex ix;
    ix.x = x;
    ix.u = cells.front();
    ix.alpha = sub(x, mat_int(sp.Mp, ix.u));
    ix.multiplicity = sp.multiplicity;
    return ix;
}

std::vector<ThetaIndex> theta_indices(const ThetaSpace& sp)
{
    std::vector<ThetaIndex> out;
    const IntMatrix& beta = sp.kit.ext.bm.beta;
    RatMatrix binv = inverse(to_rat(beta));
    for (auto& r : coset_representatives(sp.L)) {
        ThetaIndex ix = decompose(sp, r);
        // move u into the box around 0 modulo beta(Y)
        RatVec q = mat_apply(binv, ix.u);
        IntVec y(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) y[i] = floor_q(q[i] + Rational(1, 2));
        if (!is_zero(y)) ix = decompose(sp, sub(r, mat_int(sp.L, y)));
        // representative whose own term has the least valuation, then the least weight
        Rational v0 = term_valuation(sp, ix.u, ix.alpha);
        ThetaIndex best = ix;
        Rational bestv = v0;
        for (auto& z : theta_support(sp, ix, v0 + 1)) {
            IntVec w = add(ix.x, mat_int(sp.L, z));
            ThetaIndex cand = decompose(sp, w);
            Rational cv = term_valuation(sp, cand.u, cand.alpha);
            if (cv < bestv || (cv == bestv && cand.x < best.x)) {
                best = cand;
                bestv = cv;
            }
        }
        out.push_back(best);
    }
    return out;
}

Rational FormalThetaSeries::min_valuation() const
{
    if (terms.empty()) throw DomainError("empty series");
    Rational best = terms.begin()->second.t_exponent();
    for (auto& [w, c] : terms) best = std::min(best, c.t_exponent());
    return best;
}

std::vector<IntVec> theta_support(const ThetaSpace& sp, const ThetaIndex& ix, const Rational& cutoff)
{
    const std::size_t g = ix.x.size();
    const IntMatrix& beta = sp.kit.ext.bm.beta;
    Rational c0 = term_valuation(sp, ix.u, ix.alpha);
    std::vector<IntVec> out;
    // val(y) = y^t S y + (beta^t x) y + c0 >= lambda |y|^2 - |b| |y| + c0
    IntVec b = beta.transpose().apply(ix.x);
    double bn = 0;
    for (auto& bi : b) bn += bi.convert_to<double>() * bi.convert_to<double>();
    bn = std::sqrt(bn);
    double lam = certified_min_eigen_bound(sp.S).convert_to<double>();
    double gap = (cutoff - c0).convert_to<double>();
    double disc = bn * bn + 4 * lam * gap;
    if (disc < 0) return out;
    double R = (bn + std::sqrt(disc)) / (2 * lam);
    long r = static_cast<long>(std::ceil(R)) + 1;
    for (auto& y : box_points(g, r)) {
        IntVec v = add(ix.u, beta.apply(y));
        if (term_valuation(sp, v, ix.alpha) < cutoff) out.push_back(y);
    }
    return out;
}

FormalThetaSeries build_theta(const ThetaSpace& sp, const IntVec& x, const Rational& cutoff)
{
    ThetaIndex ix = decompose(sp, x);
    FormalThetaSeries s;
    s.m = sp.m;
    s.x = ix.x;
    s.alpha = ix.alpha;
    s.u = ix.u;
    s.cutoff = cutoff;
    const IntMatrix& beta = sp.kit.ext.bm.beta;
    for (auto& y : theta_support(sp, ix, cutoff)) {
        IntVec v = add(ix.u, beta.apply(y));
        IntVec w = add(ix.alpha, mat_int(sp.Mp, v));
        s.terms[w] = sp.kit.eps(v).pow(sp.m) * sp.kit.ext.tau_e_at(v, ix.alpha);
    }
    return s;
}

FormalThetaSeries apply_Sy(const ThetaSpace& sp, const FormalThetaSeries& s, const IntVec& y)
{
    const auto& base = sp.kit.ext.base;
    FormalThetaSeries r = s;
    r.terms.clear();
    IntVec shift = mat_int(sp.L, y);
    ValuedScalar k = base.psi_at(y).pow(sp.modulus);
    for (auto& [w, c] : s.terms) r.terms[add(w, shift)] = c * k * base.tau_at(y, w);
    r.x = add(s.x, shift);
    r.u = add(s.u, sp.kit.ext.beta_of(y));
    return r;
}

FormalThetaSeries apply_delta_u(const ThetaSpace& sp, const FormalThetaSeries& s, const IntVec& u)
{
    FormalThetaSeries r = s;
    r.terms.clear();
    IntVec shift = mat_int(sp.Mp, u);
    ValuedScalar k = sp.kit.eps(u).pow(sp.m);
    for (auto& [w, c] : s.terms) r.terms[add(w, shift)] = c * k * sp.kit.ext.tau_e_at(u, w);
    r.x = add(s.x, shift);
    r.u = add(s.u, u);
    return r;
}

FormalThetaSeries truncate(const FormalThetaSeries& s, const Rational& cutoff)
{
    FormalThetaSeries r = s;
    r.cutoff = std::min(cutoff, s.cutoff);
    r.terms.clear();
    for (auto& [w, c] : s.terms)
        if (c.t_exponent() < r.cutoff) r.terms.emplace(w, c);
    return r;
}

bool y_invariant(const ThetaSpace& sp, const IntVec& x, const Rational& cutoff, const IntVec& y)
{
    FormalThetaSeries target = build_theta(sp, x, cutoff);
    const IntMatrix& beta = sp.kit.ext.bm.beta;
    IntVec by = beta.apply(y);
    // every target term at v has its preimage at v - beta(y)
    Rational deep = cutoff;
    const RatMatrix mp_inv = inverse(to_rat(sp.Mp));
    for (auto& [w, c] : target.terms) {
        RatVec vr = mat_apply(mp_inv, to_rat(sub(w, target.alpha)));
        IntVec v = to_int(vr);
        deep = std::max(deep, term_valuation(sp, sub(v, by), target.alpha) + 1);
    }
    FormalThetaSeries src = build_theta(sp, x, deep);
    FormalThetaSeries moved = truncate(apply_Sy(sp, src, y), cutoff);
    return moved.terms == target.terms;
}

bool leading_term_law(const ThetaSpace& sp, const FormalThetaSeries& s, std::string* why)
{
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    auto it = s.terms.find(s.x);
    if (it == s.terms.end())
        return fail("no term at x=" + vec_string(s.x) + ": cutoff " + to_string(s.cutoff) + " not above valuation " +
                    to_string(term_valuation(sp, s.u, s.alpha)));
    ValuedScalar expect = sp.kit.eps(s.u).pow(sp.m) * sp.kit.ext.tau_e_at(s.u, s.alpha);
    if (it->second != expect) return fail("term at x is " + it->second.str() + ", expected " + expect.str());
    Rational base = Rational(sp.m * sp.kit.E(s.u));
    IntVec mu_shift = mat_int(sp.Mp, s.u);
    for (auto& [w, c] : s.terms) {
        Rational n = c.t_exponent() - base - Rational(dot(s.u, sub(w, mu_shift)));
        if (n < 0) return fail("negative chart valuation at weight " + vec_string(w));
        if (n == 0 && w == s.x) continue;
        if (w == s.x) return fail("chart valuation of the leading term is " + to_string(n));
    }
    return true;
}

FormalThetaSeries restrict_to_stratum(const FormalThetaSeries& s, const ComplexFace& delta, const Integer& m)
{
    std::vector<RatVec> pts;
    for (auto& v : delta.vertices) pts.push_back(scale(v, Rational(m)));
    auto P = LatticePolytope::from_points(pts, s.x.size());
    FormalThetaSeries r = s;
    r.terms.clear();
    for (auto& [w, c] : s.terms)
        if (P.contains(to_rat(w))) r.terms.emplace(w, c);
    return r;
}

bool interior_restriction_law(const ThetaSpace& sp, const Rational& cutoff, std::string* why)
{
    const std::size_t g = sp.kit.ext.base.rank;
    for (auto& delta : sp.base.faces_of_sigma0()) {
        std::vector<RatVec> pts;
        for (auto& v : delta.vertices) pts.push_back(scale(v, Rational(sp.m)));
        auto P = LatticePolytope::from_points(pts, g);
        for (auto& x : P.lattice_points()) {
            if (!P.relint_contains(to_rat(x))) continue;
            auto r = restrict_to_stratum(build_theta(sp, x, cutoff), delta, sp.m);
            if (r.terms.size() != 1 || r.terms.begin()->first != x || r.terms.begin()->second != ValuedScalar::one()) {
                if (why) *why = "x=" + vec_string(x) + " keeps " + std::to_string(r.terms.size()) + " terms";
                return false;
            }
        }
    }
    return true;
}

Integer stratum_section_count(const ThetaSpace& sp, const ComplexFace& delta)
{
    std::vector<RatVec> pts;
    for (auto& v : delta.vertices) pts.push_back(scale(v, Rational(sp.m)));
    auto P = LatticePolytope::from_points(pts, sp.kit.ext.base.rank);
    return Integer(P.lattice_points().size()) * sp.multiplicity;
}

Integer very_ample_bound(const ComplexFace& delta) { return std::max(1, delta.dim); }

Integer global_very_ample_bound(std::size_t g) { return Integer(4 * g); }

// complex theta

void check_period(const PeriodData& p)
{
    const std::size_t g = p.g();
    if (g == 0) throw DomainError("period matrix is empty");
    if (p.g1 > g) throw DomainError("g1 exceeds g");
    if (p.D.size() != g) throw DomainError("D has wrong length");
    for (long d : p.D)
        if (d <= 0) throw DomainError("D must be positive");
    Eigen::MatrixXd im(g, g);
    for (std::size_t i = 0; i < g; ++i) {
        if (p.W[i].size() != g) throw DomainError("period matrix is not square");
        for (std::size_t j = 0; j < g; ++j) {
            if (std::abs(p.W[i][j] - p.W[j][i]) > 1e-12) throw DomainError("period matrix is not symmetric");
            im(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = p.W[i][j].imag();
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(im);
    if (llt.info() != Eigen::Success) throw DomainError("Im W is not positive definite");
}

Complex complex_theta(const PeriodData& p, const std::vector<long>& a, const std::vector<Complex>& z, long radius,
                      bool parallel)
{
    check_period(p);
    const std::size_t g = p.g();
    if (a.size() != g || z.size() != g) throw DomainError("characteristic or argument has wrong length");
    std::vector<double> shift(g);
    std::vector<Complex> dz(g);
    for (std::size_t i = 0; i < g; ++i) {
        shift[i] = static_cast<double>(a[i]) / static_cast<double>(p.D[i]);
        dz[i] = static_cast<double>(p.D[i]) * z[i];
    }
    auto pts = norm_ordered_points(g, radius);
    return parallel ? theta_sum_parallel(p.W, shift, dz, pts) : theta_sum_serial(p.W, shift, dz, pts);
}

namespace {

std::vector<std::vector<long>> residues(const std::vector<long>& D)
{
    std::vector<std::vector<long>> out;
    std::vector<long> a(D.size(), 0);
    for (;;) {
        out.push_back(a);
        std::size_t i = 0;
        while (i < D.size() && a[i] == D[i] - 1) a[i++] = 0;
        if (i == D.size()) break;
        ++a[i];
    }
    return out;
}

// W[v] for complex v
Complex quad(const CMatrix& W, const std::vector<Complex>& v)
{
    Complex s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) s += v[i] * W[i][j] * v[j];
    return s;
}

// T v with T = D^-1 W
std::vector<Complex> T_apply(const PeriodData& p, const std::vector<Complex>& v)
{
    std::vector<Complex> r(p.g(), 0);
    for (std::size_t i = 0; i < p.g(); ++i) {
        for (std::size_t j = 0; j < p.g(); ++j) r[i] += p.W[i][j] * v[j];
        r[i] /= static_cast<double>(p.D[i]);
    }
    return r;
}

}  // namespace

Complex complex_theta_total(const PeriodData& p, const std::vector<Complex>& z, long radius)
{
    Complex s = 0;
    for (auto& a : residues(p.D)) s += complex_theta(p, a, z, radius);
    return s;
}

double characteristic_residual(const PeriodData& p, const std::vector<long>& a, const std::vector<Complex>& z,
                               const std::vector<long>& b, const std::vector<long>& c, long radius)
{
    const std::size_t g = p.g();
    std::vector<Complex> dinv_c(g), zz(g);
    for (std::size_t i = 0; i < g; ++i) dinv_c[i] = static_cast<double>(c[i]) / static_cast<double>(p.D[i]);
    auto tc = T_apply(p, dinv_c);
    Complex phase = -quad(p.W, dinv_c) / 2.0;
    std::vector<long> ac(g);
    for (std::size_t i = 0; i < g; ++i) {
        zz[i] = z[i] + static_cast<double>(b[i]) / static_cast<double>(p.D[i]) + tc[i];
        phase += static_cast<double>(a[i]) * static_cast<double>(b[i]) / static_cast<double>(p.D[i]);
        phase -= static_cast<double>(c[i]) * z[i];
        ac[i] = a[i] + c[i];
    }
    Complex lhs = complex_theta(p, a, zz, radius);
    Complex rhs = e_of(phase) * complex_theta(p, ac, z, radius);
    return std::abs(lhs - rhs);
}

double periodicity_residual(const PeriodData& p, const std::vector<Complex>& z, const std::vector<long>& b,
                            const std::vector<long>& c, long radius)
{
    const std::size_t g = p.g();
    std::vector<Complex> cc(g), zz(g);
    for (std::size_t i = 0; i < g; ++i) cc[i] = static_cast<double>(c[i]);
    auto tc = T_apply(p, cc);
    Complex phase = -quad(p.W, cc) / 2.0;
    for (std::size_t i = 0; i < g; ++i) {
        zz[i] = z[i] + static_cast<double>(b[i]) + tc[i];
        phase -= static_cast<double>(p.D[i] * c[i]) * z[i];
    }
    return std::abs(complex_theta_total(p, zz, radius) - e_of(phase) * complex_theta_total(p, z, radius));
}

Complex sigma_coefficient(const PeriodData& p, const std::vector<long>& r1, const std::vector<Complex>& z2,
                          long radius)
{
    check_period(p);
    const std::size_t g = p.g(), g1 = p.g1, g2 = g - g1;
    if (r1.size() != g1 || z2.size() != g2) throw DomainError("sigma arguments have wrong length");
    // n1 = D1^-1 r1 is fixed; n2 runs over D2^-1 Z^g2
    std::vector<Complex> n1(g1);
    for (std::size_t i = 0; i < g1; ++i) n1[i] = static_cast<double>(r1[i]) / static_cast<double>(p.D[i]);
    Complex head = 0;
    for (std::size_t i = 0; i < g1; ++i)
        for (std::size_t j = 0; j < g1; ++j) head += n1[i] * p.W[i][j] * n1[j];
    head /= 2.0;
    CMatrix W22(g2, std::vector<Complex>(g2));
    std::vector<Complex> dz(g2);
    for (std::size_t i = 0; i < g2; ++i) {
        for (std::size_t j = 0; j < g2; ++j) W22[i][j] = p.W[g1 + i][g1 + j];
        dz[i] = static_cast<double>(p.D[g1 + i]) * z2[i];
        for (std::size_t j = 0; j < g1; ++j) dz[i] += p.W[g1 + i][j] * n1[j];
    }
    std::vector<long> D2(p.D.begin() + static_cast<long>(g1), p.D.end());
    auto pts = norm_ordered_points(g2, radius);
    Complex s = 0;
    for (auto& a2 : residues(D2)) {
        std::vector<double> shift(g2);
        for (std::size_t i = 0; i < g2; ++i) shift[i] = static_cast<double>(a2[i]) / static_cast<double>(D2[i]);
        s += theta_sum_parallel(W22, shift, dz, pts);
    }
    return e_of(head) * s;
}

double sigma_residual(const PeriodData& p, const std::vector<long>& r1, const std::vector<long>& c1,
                      const std::vector<Complex>& z2, long radius)
{
    const std::size_t g = p.g(), g1 = p.g1, g2 = g - g1;
    std::vector<long> r1c(g1);
    Complex phase = 0;
    for (std::size_t i = 0; i < g1; ++i) {
        r1c[i] = r1[i] + p.D[i] * c1[i];
        for (std::size_t j = 0; j < g1; ++j) {
            phase += static_cast<double>(c1[i] * c1[j]) * p.W[i][j] / 2.0;
            // r1^t T11 c1, T11 = D1^-1 W11
            phase += static_cast<double>(r1[i]) * p.W[i][j] * static_cast<double>(c1[j]) /
                     static_cast<double>(p.D[i]);
        }
    }
    std::vector<Complex> zz = z2;
    for (std::size_t i = 0; i < g2; ++i)
        for (std::size_t j = 0; j < g1; ++j)
            zz[i] += p.W[g1 + i][j] * static_cast<double>(c1[j]) / static_cast<double>(p.D[g1 + i]);
    Complex lhs = sigma_coefficient(p, r1c, z2, radius);
    Complex rhs = e_of(phase) * sigma_coefficient(p, r1, zz, radius);
    return std::abs(lhs - rhs);
}

}  // namespace degenkit
