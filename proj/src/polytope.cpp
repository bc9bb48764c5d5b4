#include "degenkit/polytope.hpp"

#include <algorithm>
#include <set>

namespace degenkit {

bool lex_less(const RatVec& a, const RatVec& b) { return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); }

int affine_dimension(const std::vector<RatVec>& pts)
{
    if (pts.empty()) return -1;
    std::vector<RatVec> d;
    for (std::size_t i = 1; i < pts.size(); ++i) d.push_back(sub(pts[i], pts[0]));
    if (d.empty()) return 0;
    return static_cast<int>(rank(RatMatrix::from_rows(d)));
}

std::vector<IntVec> extreme_rays(const std::vector<IntVec>& A, std::size_t d)
{
    std::vector<RatVec> rrows;
    for (auto& r : A) rrows.push_back(to_rat(r));
    auto base = independent_subset(rrows);
    if (base.size() < d) throw DomainError("cone is not pointed (constraint rank deficient)");
    base.resize(d);

    std::vector<RatVec> sub_rows;
    for (auto i : base) sub_rows.push_back(rrows[i]);
    RatMatrix inv = inverse(RatMatrix::from_rows(sub_rows));

    const std::size_t m = A.size();
    struct Ray {
        IntVec v;
        std::vector<char> zero;  // zero[i] for processed rows
    };
    std::vector<Ray> rays;
    std::vector<char> processed(m, 0);
    for (auto i : base) processed[i] = 1;
    for (std::size_t j = 0; j < d; ++j) {
        Ray r{primitive(inv.col(j)), std::vector<char>(m, 0)};
        for (std::size_t i = 0; i < m; ++i)
            if (processed[i] && dot(A[i], r.v) == 0) r.zero[i] = 1;
        rays.push_back(std::move(r));
    }

    for (std::size_t row = 0; row < m; ++row) {
        if (processed[row]) continue;
        const IntVec& a = A[row];
        std::vector<Integer> s(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            s[k] = dot(a, rays[k].v);
            if (s[k] > 0) pos.push_back(k);
            if (s[k] < 0) neg.push_back(k);
        }
        if (neg.empty()) {
            for (std::size_t k = 0; k < rays.size(); ++k)
                if (s[k] == 0) rays[k].zero[row] = 1;
            processed[row] = 1;
            continue;
        }
        std::vector<Ray> next;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            if (s[k] < 0) continue;
            Ray r = rays[k];
            if (s[k] == 0) r.zero[row] = 1;
            next.push_back(std::move(r));
        }
        for (auto p : pos)
            for (auto n : neg) {
                std::vector<char> common(m, 0);
                std::size_t cnt = 0;
                for (std::size_t i = 0; i < m; ++i)
                    if (rays[p].zero[i] && rays[n].zero[i]) {
                        common[i] = 1;
                        ++cnt;
                    }
                if (d >= 2 && cnt + 2 < d) continue;
                bool adjacent = true;
                for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
                    if (k == p || k == n) continue;
                    bool sup = true;
                    for (std::size_t i = 0; i < m; ++i)
                        if (common[i] && !rays[k].zero[i]) {
                            sup = false;
                            break;
                        }
                    if (sup) adjacent = false;
                }
                if (!adjacent) continue;
                IntVec v(d);
                for (std::size_t c = 0; c < d; ++c) v[c] = s[p] * rays[n].v[c] - s[n] * rays[p].v[c];
                Ray r{primitive(v), common};
                r.zero[row] = 1;
                next.push_back(std::move(r));
            }
        rays = std::move(next);
        processed[row] = 1;
    }
    std::vector<IntVec> out;
    for (auto& r : rays) out.push_back(r.v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LatticePolytope LatticePolytope::from_points(const std::vector<RatVec>& input, std::size_t ambient)
{
    if (input.empty()) throw DomainError("polytope from an empty point set");
    std::vector<RatVec> pts = input;
    for (auto& p : pts)
        if (p.size() != ambient) throw DomainError("point dimension mismatch");
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    LatticePolytope P;
    P.ambient_ = ambient;
    const RatVec& q0 = pts[0];
    std::vector<RatVec> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], q0));
    std::vector<RatVec> basis;
    for (auto i : independent_subset(diffs)) basis.push_back(diffs[i]);
    const std::size_t k = basis.size();
    P.dim_ = static_cast<int>(k);

    // affine hull equations
    std::vector<RatVec> normals;
    if (k == 0) {
        for (std::size_t i = 0; i < ambient; ++i) {
            RatVec e(ambient, Rational(0));
            e[i] = 1;
            normals.push_back(e);
        }
    } else {
        normals = nullspace(RatMatrix::from_rows(basis));
    }
    for (auto& nrm : normals) {
        IntVec n = primitive(nrm);
        P.equations_.push_back({n, -dot(n, q0)});
    }
    if (k == 0) {
        P.vertices_ = {q0};
        return P;
    }

    RatMatrix B = RatMatrix::from_columns(basis, ambient);  // ambient x k
    RatMatrix Bt = B.transpose();
    RatMatrix L = inverse(Bt * B) * Bt;  // k x ambient, left inverse
    std::vector<RatVec> coords;
    for (auto& p : pts) coords.push_back(L.apply(sub(p, q0)));

    std::vector<IntVec> rows;
    for (auto& c : coords) {
        RatVec r{Rational(1)};
        r.insert(r.end(), c.begin(), c.end());
        Integer l = 1;
        for (auto& x : r) l = lcm(l, den(x));
        IntVec ri;
        for (auto& x : r) ri.push_back(num(x * l));
        rows.push_back(ri);
    }
    auto rays = extreme_rays(rows, k + 1);
    RatMatrix Lt = L.transpose();  // ambient x k
    std::vector<RatVec> hvecs;
    for (auto& ray : rays) {
        RatVec h(ray.begin() + 1, ray.end());
        if (is_zero(h)) continue;
        RatVec namb = Lt.apply(h);
        IntVec n = primitive(namb);
        // factor s with n = s * namb (s > 0)
        std::size_t idx = 0;
        while (namb[idx] == 0) ++idx;
        Rational s = Rational(n[idx]) / namb[idx];
        Rational off = s * (Rational(ray[0]) - dot(namb, q0));
        P.facets_.push_back({n, off});
        hvecs.push_back(h);
    }
    // vertices: points with k independent tight facets
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<RatVec> tight;
        for (std::size_t f = 0; f < P.facets_.size(); ++f)
            if (dot(P.facets_[f].normal, pts[i]) + P.facets_[f].offset == 0) tight.push_back(hvecs[f]);
        if (!tight.empty() && rank(RatMatrix::from_rows(tight)) == k) P.vertices_.push_back(pts[i]);
    }
    std::sort(P.facets_.begin(), P.facets_.end(), [](const Facet& a, const Facet& b) {
        return a.normal != b.normal ? a.normal < b.normal : a.offset < b.offset;
    });
    return P;
}

LatticePolytope LatticePolytope::from_inequalities(const std::vector<Facet>& ineqs, std::size_t ambient)
{
    std::vector<IntVec> rows;
    IntVec lam(ambient + 1, Integer(0));
    lam[0] = 1;
    rows.push_back(lam);
    for (auto& f : ineqs) {
        Integer dd = den(f.offset);
        IntVec r{num(f.offset)};
        for (auto& x : f.normal) r.push_back(x * dd);
        rows.push_back(r);
    }
    auto rays = extreme_rays(rows, ambient + 1);
    std::vector<RatVec> verts;
    for (auto& r : rays) {
        if (r[0] == 0) throw DomainError("unbounded polyhedron");
        RatVec v;
        for (std::size_t i = 1; i <= ambient; ++i) v.push_back(Rational(r[i], r[0]));
        verts.push_back(v);
    }
    return from_points(verts, ambient);
}

bool LatticePolytope::contains(const RatVec& x) const { return contains_scaled(x, Rational(1)); }

bool LatticePolytope::contains_scaled(const RatVec& x, const Rational& k) const
{
    for (auto& e : equations_)
        if (dot(e.normal, x) + k * e.offset != 0) return false;
    for (auto& f : facets_)
        if (dot(f.normal, x) + k * f.offset < 0) return false;
    return true;
}

bool LatticePolytope::relint_contains(const RatVec& x) const
{
    for (auto& e : equations_)
        if (dot(e.normal, x) + e.offset != 0) return false;
    for (auto& f : facets_)
        if (dot(f.normal, x) + f.offset <= 0) return false;
    return true;
}

bool LatticePolytope::is_integral() const
{
    return std::all_of(vertices_.begin(), vertices_.end(), [](const RatVec& v) { return degenkit::is_integral(v); });
}

LatticePolytope LatticePolytope::translated(const RatVec& v) const
{
    LatticePolytope r = *this;
    for (auto& p : r.vertices_) p = add(p, v);
    for (auto& f : r.facets_) f.offset -= dot(f.normal, v);
    for (auto& e : r.equations_) e.offset -= dot(e.normal, v);
    return r;
}

LatticePolytope LatticePolytope::scaled(const Rational& k) const
{
    if (k <= 0) throw DomainError("polytope scale must be positive");
    LatticePolytope r = *this;
    for (auto& p : r.vertices_) p = scale(p, k);
    for (auto& f : r.facets_) f.offset *= k;
    for (auto& e : r.equations_) e.offset *= k;
    return r;
}

RatVec LatticePolytope::centroid() const
{
    RatVec c(ambient_, Rational(0));
    for (auto& v : vertices_) c = add(c, v);
    return scale(c, Rational(1, static_cast<long long>(vertices_.size())));
}

void LatticePolytope::bounding_box(RatVec& lo, RatVec& hi) const
{
    lo = hi = vertices_.at(0);
    for (auto& v : vertices_)
        for (std::size_t i = 0; i < ambient_; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
}

std::vector<IntVec> LatticePolytope::lattice_points() const
{
    RatVec lo, hi;
    bounding_box(lo, hi);
    IntVec a(ambient_), b(ambient_);
    for (std::size_t i = 0; i < ambient_; ++i) {
        a[i] = ceil_q(lo[i]);
        b[i] = floor_q(hi[i]);
        if (a[i] > b[i]) return {};
    }
    std::vector<IntVec> out;
    IntVec x = a;
    for (;;) {
        if (contains(to_rat(x))) out.push_back(x);
        std::size_t i = 0;
        while (i < ambient_) {
            if (x[i] < b[i]) {
                x[i] += 1;
                break;
            }
            x[i] = a[i];
            ++i;
        }
        if (i == ambient_) break;
    }
    return out;
}

std::vector<std::size_t> LatticePolytope::tight_facets(const RatVec& x) const
{
    std::vector<std::size_t> t;
    for (std::size_t f = 0; f < facets_.size(); ++f)
        if (dot(facets_[f].normal, x) + facets_[f].offset == 0) t.push_back(f);
    return t;
}

std::vector<FaceRecord> LatticePolytope::faces() const
{
    std::set<std::vector<std::size_t>> sets;
    std::vector<std::size_t> all(vertices_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    sets.insert(all);
    std::vector<std::vector<std::size_t>> frontier;
    for (auto& f : facets_) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (dot(f.normal, vertices_[i]) + f.offset == 0) s.push_back(i);
        if (!s.empty() && sets.insert(s).second) frontier.push_back(s);
    }
    std::vector<std::vector<std::size_t>> facet_sets = frontier;
    while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> nxt;
        for (auto& a : frontier)
            for (auto& b : facet_sets) {
                std::vector<std::size_t> c;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
                if (!c.empty() && sets.insert(c).second) nxt.push_back(c);
            }
        frontier = std::move(nxt);
    }
    std::vector<FaceRecord> out;
    for (auto& s : sets) {
        std::vector<RatVec> pts;
        for (auto i : s) pts.push_back(vertices_[i]);
        out.push_back({s, affine_dimension(pts)});
    }
    std::sort(out.begin(), out.end(), [](const FaceRecord& a, const FaceRecord& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
    });
    return out;
}

}  // namespace degenkit
