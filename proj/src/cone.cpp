#include "degenkit/cone.hpp"

#include "degenkit/lattice.hpp"
#include "degenkit/polytope.hpp"

#include <algorithm>

namespace degenkit {

std::vector<IntVec> canonical_span_basis(const std::vector<IntVec>& vs, std::size_t ambient)
{
    std::vector<RatVec> rows;
    for (auto& v : vs)
        if (!is_zero(v)) rows.push_back(to_rat(v));
    if (rows.empty()) return {};
    RatMatrix m = RatMatrix::from_rows(rows);
    if (m.cols != ambient) throw DomainError("vector dimension mismatch");
    auto piv = rref(m);
    std::vector<IntVec> out;
    for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(primitive(m.row(i)));
    return out;
}

void dual_generators(const std::vector<IntVec>& gens, std::size_t ambient, std::vector<IntVec>& rays,
                     std::vector<IntVec>& lineality)
{
    rays.clear();
    lineality.clear();
    std::vector<RatVec> g;
    for (auto& v : gens)
        if (!is_zero(v)) g.push_back(to_rat(v));
    if (g.empty()) {
        for (std::size_t i = 0; i < ambient; ++i) {
            IntVec e(ambient, Integer(0));
            e[i] = 1;
            lineality.push_back(e);
        }
        return;
    }
    std::vector<IntVec> perp;
    for (auto& v : nullspace(RatMatrix::from_rows(g))) perp.push_back(primitive(v));
    lineality = canonical_span_basis(perp, ambient);

    std::vector<RatVec> basis;
    for (auto i : independent_subset(g)) basis.push_back(g[i]);
    const std::size_t k = basis.size();
    std::vector<IntVec> A;
    for (auto& v : g) {
        RatVec row;
        for (auto& s : basis) row.push_back(dot(v, s));
        A.push_back(primitive(row));
    }
    for (auto& c : extreme_rays(A, k)) {
        RatVec y(ambient, Rational(0));
        for (std::size_t j = 0; j < k; ++j) y = add(y, scale(basis[j], Rational(c[j])));
        rays.push_back(primitive(y));
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
}

RationalCone RationalCone::generated_by(const std::vector<IntVec>& gens, std::size_t ambient)
{
    RationalCone c;
    c.ambient_ = ambient;
    for (auto& v : gens)
        if (v.size() != ambient) throw DomainError("cone generator dimension mismatch");
    dual_generators(gens, ambient, c.ineqs_, c.eqs_);
    std::vector<IntVec> dg = c.ineqs_;
    for (auto& e : c.eqs_) {
        dg.push_back(e);
        dg.push_back(neg(e));
    }
    std::vector<IntVec> lin;
    dual_generators(dg, ambient, c.rays_, lin);
    c.lineality_ = canonical_span_basis(lin, ambient);
    return c;
}

int RationalCone::dim() const { return static_cast<int>(ambient_ - eqs_.size()); }

bool RationalCone::contains(const RatVec& x) const
{
    for (auto& e : eqs_)
        if (dot(e, x) != 0) return false;
    for (auto& h : ineqs_)
        if (dot(h, x) < 0) return false;
    return true;
}

bool RationalCone::contains(const IntVec& x) const
{
    for (auto& e : eqs_)
        if (dot(e, x) != 0) return false;
    for (auto& h : ineqs_)
        if (dot(h, x) < 0) return false;
    return true;
}

bool RationalCone::relint_contains(const RatVec& x) const
{
    for (auto& e : eqs_)
        if (dot(e, x) != 0) return false;
    for (auto& h : ineqs_)
        if (dot(h, x) <= 0) return false;
    return true;
}

RationalCone RationalCone::dual() const
{
    RationalCone d;
    d.ambient_ = ambient_;
    d.rays_ = ineqs_;
    d.lineality_ = eqs_;
    d.ineqs_ = rays_;
    d.eqs_ = lineality_;
    return d;
}

RationalCone RationalCone::intersect(const RationalCone& o) const
{
    std::vector<IntVec> g = ineqs_;
    g.insert(g.end(), o.ineqs_.begin(), o.ineqs_.end());
    for (auto* es : {&eqs_, &o.eqs_})
        for (auto& e : *es) {
            g.push_back(e);
            g.push_back(neg(e));
        }
    return generated_by(g, ambient_).dual();
}

std::vector<IntVec> RationalCone::generators() const
{
    std::vector<IntVec> g = rays_;
    for (auto& e : lineality_) {
        g.push_back(e);
        g.push_back(neg(e));
    }
    return g;
}

std::vector<RationalCone> RationalCone::facets() const
{
    std::vector<RationalCone> out;
    for (auto& h : ineqs_) {
        std::vector<IntVec> g;
        for (auto& r : rays_)
            if (dot(h, r) == 0) g.push_back(r);
        for (auto& e : lineality_) {
            g.push_back(e);
            g.push_back(neg(e));
        }
        out.push_back(generated_by(g, ambient_));
    }
    return out;
}

std::string RationalCone::str() const
{
    std::string s = "cone(rays=[";
    for (std::size_t i = 0; i < rays_.size(); ++i) s += (i ? "," : "") + vec_string(rays_[i]);
    s += "], lineality=[";
    for (std::size_t i = 0; i < lineality_.size(); ++i) s += (i ? "," : "") + vec_string(lineality_[i]);
    return s + "])";
}

namespace {

using LVec = std::vector<long long>;

LVec to_l(const IntVec& v)
{
    LVec r;
    for (auto& x : v) r.push_back(to_ll(x));
    return r;
}

long long ldot(const LVec& a, const LVec& b)
{
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

std::vector<IntVec> hilbert_basis(const RationalCone& c)
{
    if (!c.is_pointed()) throw DomainError("Hilbert basis needs a pointed cone");
    if (c.rays().empty()) return {};
    const std::size_t n = c.ambient();
    long long bound = 0;
    for (auto& r : c.rays()) bound += to_ll(norm_inf(r));
    long double box = 1;
    for (std::size_t i = 0; i < n; ++i) box *= static_cast<long double>(2 * bound + 1);
    if (box > 2e7L) throw DomainError("Hilbert basis search box too large");

    std::vector<LVec> ineq, eq;
    for (auto& h : c.inequalities()) ineq.push_back(to_l(h));
    for (auto& e : c.equations()) eq.push_back(to_l(e));
    LVec ell(n, 0);
    for (auto& h : ineq)
        for (std::size_t i = 0; i < n; ++i) ell[i] += h[i];
    auto in_cone = [&](const LVec& x) {
        for (auto& e : eq)
            if (ldot(e, x) != 0) return false;
        for (auto& h : ineq)
            if (ldot(h, x) < 0) return false;
        return true;
    };

    std::vector<std::pair<long long, LVec>> cand;
    LVec x(n, -bound);
    for (;;) {
        bool nz = std::any_of(x.begin(), x.end(), [](long long v) { return v != 0; });
        if (nz && in_cone(x)) cand.push_back({ldot(ell, x), x});
        std::size_t i = 0;
        while (i < n && x[i] == bound) x[i++] = -bound;
        if (i == n) break;
        ++x[i];
    }
    std::sort(cand.begin(), cand.end());
    std::vector<LVec> hb;
    LVec diff(n);
    for (auto& [l, v] : cand) {
        bool reducible = false;
        for (auto& h : hb) {
            for (std::size_t i = 0; i < n; ++i) diff[i] = v[i] - h[i];
            if (in_cone(diff)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) hb.push_back(v);
    }
    std::vector<IntVec> out;
    for (auto& h : hb) {
        IntVec v;
        for (auto x : h) v.push_back(Integer(x));
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IntVec> semigroup_generators(const RationalCone& c)
{
    if (c.is_pointed()) return hilbert_basis(c);
    const std::size_t n = c.ambient();
    Saturation sat = saturate(c.lineality(), n);
    const std::size_t k = sat.basis.size();
    std::vector<IntVec> out;
    for (auto& b : sat.basis) {
        out.push_back(b);
        out.push_back(neg(b));
    }
    if (k < n) {
        RatMatrix Uinv = inverse(to_rat(sat.completion));
        std::vector<IntVec> img;
        for (auto& r : c.rays()) {
            IntVec q = to_int(Uinv.apply(to_rat(r)));
            img.push_back(IntVec(q.begin() + static_cast<long>(k), q.end()));
        }
        RationalCone ic = RationalCone::generated_by(img, n - k);
        for (auto& h : hilbert_basis(ic)) {
            IntVec full(k, Integer(0));
            full.insert(full.end(), h.begin(), h.end());
            out.push_back(to_int(mat_apply(sat.completion, to_rat(full))));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace degenkit
