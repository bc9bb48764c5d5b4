#include "degenkit/voronoi.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace degenkit {

ComplexFace make_face(std::vector<RatVec> vertices)
{
    std::sort(vertices.begin(), vertices.end(), lex_less);
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    ComplexFace f;
    f.dim = affine_dimension(vertices);
    f.vertices = std::move(vertices);
    return f;
}

ComplexFace ComplexFace::translated(const RatVec& v) const
{
    ComplexFace f = *this;
    for (auto& p : f.vertices) p = add(p, v);
    return f;
}

RatVec ComplexFace::centroid() const
{
    RatVec c(vertices.at(0).size(), Rational(0));
    for (auto& v : vertices) c = add(c, v);
    return scale(c, Rational(1, static_cast<long long>(vertices.size())));
}

bool ComplexFace::contains_vertex_set(const ComplexFace& sub) const
{
    for (auto& v : sub.vertices)
        if (!std::binary_search(vertices.begin(), vertices.end(), v, lex_less)) return false;
    return true;
}

std::vector<IntVec> box_points(std::size_t n, long r)
{
    std::vector<IntVec> out;
    IntVec x(n, Integer(-r));
    for (;;) {
        out.push_back(x);
        std::size_t i = 0;
        while (i < n && x[i] == r) x[i++] = -r;
        if (i == n) break;
        x[i] += 1;
    }
    return out;
}

namespace {

// least integer r >= 0 with r^2 >= q
Integer ceil_sqrt(const Rational& q)
{
    Integer c = ceil_q(q);
    if (c <= 0) return 0;
    Integer r = boost::multiprecision::sqrt(c);
    while (r * r < c) ++r;
    return r;
}

}  // namespace

VoronoiForm::VoronoiForm(RatMatrix M, std::size_t rank_cap) : M_(std::move(M))
{
    const std::size_t g = M_.rows;
    if (!M_.is_square() || g == 0) throw DomainError("quadratic form must be a nonempty square matrix");
    if (g > rank_cap) throw DomainError("rank cap exceeded");
    if (M_ != M_.transpose()) throw DomainError("quadratic form must be symmetric");
    if (!positive_definite(M_).positive_definite) throw DomainError("quadratic form is not positive definite");
    Minv_ = inverse(M_);

    Rational lambda = certified_min_eigen_bound(M_.scaled(Rational(1, 2)));
    std::vector<Facet> cons;
    for (auto& u : box_points(g, 1))
        if (!is_zero(u)) cons.push_back({u, E(u)});
    for (;;) {
        sigma0_ = LatticePolytope::from_inequalities(cons, g);
        Rational rho2 = 0;
        for (auto& v : sigma0_.vertices()) rho2 = std::max(rho2, dot(v, v));
        Integer R = ceil_q(Rational(ceil_sqrt(rho2)) / lambda);
        std::vector<Facet> violated;
        for (auto& u : box_points(g, static_cast<long>(to_ll(R)))) {
            if (is_zero(u)) continue;
            Rational e = E(u);
            for (auto& v : sigma0_.vertices())
                if (e + dot(u, v) < 0) {
                    violated.push_back({u, e});
                    break;
                }
        }
        if (violated.empty()) {
            cert_radius_ = R;
            break;
        }
        cons.insert(cons.end(), violated.begin(), violated.end());
    }
    for (auto& v : sigma0_.vertices())
        for (auto& c : Minv_.apply(v)) cell_radius_ = std::max(cell_radius_, c < 0 ? Rational(-c) : c);
}

VoronoiForm VoronoiForm::of_kit(const NefcKit& kit, std::size_t rank_cap) { return VoronoiForm(kit.form(), rank_cap); }

Rational VoronoiForm::E(const IntVec& u) const { return dot(u, M_.apply(to_rat(u))) / 2; }

RatVec VoronoiForm::shift(const IntVec& w) const { return M_.apply(to_rat(w)); }

std::vector<IntVec> VoronoiForm::cells_containing(const RatVec& x) const
{
    const std::size_t g = rank();
    RatVec z = Minv_.apply(x);
    IntVec lo(g), hi(g);
    for (std::size_t i = 0; i < g; ++i) {
        lo[i] = ceil_q(z[i] - cell_radius_);
        hi[i] = floor_q(z[i] + cell_radius_);
        if (lo[i] > hi[i]) return {};
    }
    std::vector<IntVec> out;
    IntVec w = lo;
    for (;;) {
        if (sigma0_.contains(sub(x, shift(w)))) out.push_back(w);
        std::size_t i = 0;
        while (i < g && w[i] == hi[i]) {
            w[i] = lo[i];
            ++i;
        }
        if (i == g) break;
        w[i] += 1;
    }
    return out;
}

bool VoronoiForm::meets(const IntVec& w) const
{
    RatVec s = shift(w);
    for (auto& v : sigma0_.vertices())
        if (sigma0_.contains(add(v, s))) return true;
    return false;
}

ComplexFace VoronoiForm::minimal_face(const RatVec& x) const
{
    auto ws = cells_containing(x);
    if (ws.empty()) throw DomainError("point " + vec_string(x) + " lies outside the complex");
    RatVec s = shift(ws[0]);
    RatVec y = sub(x, s);
    auto tight = sigma0_.tight_facets(y);
    std::vector<RatVec> verts;
    for (auto& v : sigma0_.vertices()) {
        bool on = true;
        for (auto f : tight)
            if (dot(sigma0_.facets()[f].normal, v) + sigma0_.facets()[f].offset != 0) {
                on = false;
                break;
            }
        if (on) verts.push_back(add(v, s));
    }
    return make_face(verts);
}

std::vector<ComplexFace> VoronoiForm::faces_of_sigma0() const
{
    std::vector<ComplexFace> out;
    for (auto& fr : sigma0_.faces()) {
        std::vector<RatVec> vs;
        for (auto i : fr.vertices) vs.push_back(sigma0_.vertices()[i]);
        out.push_back(make_face(vs));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IntVec> VoronoiForm::cells_containing_face(const ComplexFace& F) const
{
    std::vector<IntVec> out;
    for (auto& w : cells_containing(F.vertices.at(0))) {
        RatVec s = shift(w);
        bool all = true;
        for (auto& v : F.vertices)
            if (!sigma0_.contains(sub(v, s))) {
                all = false;
                break;
            }
        if (all) out.push_back(w);
    }
    return out;
}

LatticePolytope VoronoiForm::cut(const ComplexFace& F, const Rational& e) const
{
    std::vector<RatVec> pts;
    for (auto& w : cells_containing_face(F)) pts.push_back(scale(to_rat(w), -e));
    if (pts.empty()) throw DomainError("face is not in the complex");
    return LatticePolytope::from_points(pts, rank());
}

Rational VoronoiForm::D(const RatVec& x) const
{
    auto ws = cells_containing(x);
    if (ws.empty()) throw DomainError("internal: no decomposition of " + vec_string(x));
    std::optional<Rational> val;
    for (auto& w : ws) {
        Rational d = E(w) + dot(w, sub(x, shift(w)));
        if (val && *val != d) throw DomainError("internal: D is not well defined at " + vec_string(x));
        val = d;
    }
    return *val;
}

LatticePolytope sigma_zero(const NefcKit& kit, std::size_t rank_cap) { return VoronoiForm::of_kit(kit, rank_cap).sigma0(); }

Integer minimal_scale(const LatticePolytope& sigma_level_one, const Integer& bound)
{
    for (Integer l = 1; l <= bound; ++l)
        if (sigma_level_one.scaled(Rational(l)).is_integral()) return l;
    throw DomainError("no integral scale <= " + bound.str());
}

std::vector<std::vector<ComplexFace>> skeleton(const LatticePolytope& p)
{
    std::vector<std::vector<ComplexFace>> sk(static_cast<std::size_t>(std::max(p.dim(), 0)) + 1);
    for (auto& fr : p.faces()) {
        std::vector<RatVec> vs;
        for (auto i : fr.vertices) vs.push_back(p.vertices()[i]);
        sk[static_cast<std::size_t>(fr.dim)].push_back(make_face(vs));
    }
    for (auto& s : sk) std::sort(s.begin(), s.end());
    return sk;
}

StarReport star(const VoronoiForm& f, const RatVec& alpha)
{
    StarReport r;
    r.cells = f.cells_containing(alpha);
    if (r.cells.empty()) throw DomainError("point " + vec_string(alpha) + " lies outside the complex");
    for (auto& w : r.cells) r.polytopes.push_back(f.cell(w));
    return r;
}

bool ContainmentReport::ok() const
{
    return std::all_of(items.begin(), items.end(), [](const LemmaCheck& c) { return c.passed; });
}

ContainmentReport containment_lemmas(const VoronoiForm& f, long window)
{
    const std::size_t g = f.rank();
    const LatticePolytope& S = f.sigma0();
    std::vector<RatVec> alphas;
    for (auto& p : S.lattice_points()) alphas.push_back(to_rat(p));
    for (auto& v : S.vertices()) alphas.push_back(v);
    std::sort(alphas.begin(), alphas.end(), lex_less);
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    std::vector<std::vector<IntVec>> stars;
    for (auto& a : alphas) stars.push_back(f.cells_containing(a));

    std::map<IntVec, bool> meet_cache;
    auto meets = [&](const IntVec& w) {
        auto it = meet_cache.find(w);
        if (it != meet_cache.end()) return it->second;
        bool m = f.meets(w);
        meet_cache[w] = m;
        return m;
    };
    auto in_scaled = [&](const IntVec& w, long k) { return S.contains_scaled(f.shift(w), Rational(k)); };

    ContainmentReport rep;
    auto fail = [](LemmaCheck& c, const std::string& s) {
        if (c.passed) c.counterexample = s;
        c.passed = false;
    };
    auto ws = box_points(g, window);

    LemmaCheck c1{"meets_implies_2Sigma", 0, true, {}};
    for (auto& w : ws) {
        if (!meets(w)) continue;
        ++c1.cases;
        if (!in_scaled(w, 2)) fail(c1, "w=" + vec_string(w));
    }
    LemmaCheck c2{"star_in_3Sigma", 0, true, {}};
    for (std::size_t a = 0; a < alphas.size(); ++a)
        for (auto& v : stars[a]) {
            ++c2.cases;
            auto cv = f.cell(v);
            for (auto& p : cv.vertices())
                if (!S.contains_scaled(p, Rational(3))) {
                    fail(c2, "alpha=" + vec_string(alphas[a]) + " cell=" + vec_string(v));
                    break;
                }
        }
    LemmaCheck c3{"meets_star_implies_4Sigma", 0, true, {}}, c4{"star_translate_implies_4Sigma", 0, true, {}}, c5{"multiple_translate_only_zero", 0, true, {}};
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        const auto& st = stars[a];
        for (auto& w : ws) {
            bool hit3 = false;
            for (auto& v : st)
                if (meets(sub(w, v))) {
                    hit3 = true;
                    break;
                }
            if (hit3) {
                ++c3.cases;
                if (!in_scaled(w, 4)) fail(c3, "alpha=" + vec_string(alphas[a]) + " w=" + vec_string(w));
            }
            auto star_translate = [&](const IntVec& z) {
                for (auto& v1 : st)
                    for (auto& v2 : st)
                        if (meets(sub(add(z, v1), v2))) return true;
                return false;
            };
            if (star_translate(w)) {
                ++c4.cases;
                if (!in_scaled(w, 4)) fail(c4, "alpha=" + vec_string(alphas[a]) + " w=" + vec_string(w));
            }
            if (!is_zero(w))
                for (long m = 4; m <= 6; ++m) {
                    ++c5.cases;
                    if (star_translate(scale(w, Integer(m))))
                        fail(c5, "alpha=" + vec_string(alphas[a]) + " w=" + vec_string(w) + " m=" + std::to_string(m));
                }
        }
    }
    rep.items = {c1, c2, c3, c4, c5};
    return rep;
}

Saturation saturation_lattice(const ComplexFace& delta)
{
    const std::size_t n = delta.vertices.at(0).size();
    std::vector<IntVec> diffs;
    for (auto& v : delta.vertices) {
        RatVec d = sub(v, delta.vertices[0]);
        if (!is_integral(d)) throw DomainError("face is not integral");
        if (!is_zero(d)) diffs.push_back(to_int(d));
    }
    return saturate(diffs, n);
}

IntVec lattice_coordinates(const Saturation& sat, const RatVec& v)
{
    if (sat.basis.empty()) return {};
    RatMatrix B = to_rat(IntMatrix::from_columns(sat.basis, v.size()));
    RatVec c;
    if (!solve(B, v, c)) throw DomainError("vector is not in the span of the sublattice");
    if (!is_integral(c)) throw DomainError("vector is not in the sublattice");
    return to_int(c);
}

RationalCone face_cone(const ComplexFace& delta, const ComplexFace& sub_face)
{
    const std::size_t n = delta.vertices.at(0).size();
    std::vector<IntVec> gens;
    for (auto& v : delta.vertices)
        for (auto& a : sub_face.vertices) {
            RatVec d = sub(v, a);
            if (!is_zero(d)) gens.push_back(primitive(d));
        }
    return RationalCone::generated_by(gens, n);
}

RationalCone face_cone_local(const ComplexFace& delta, const ComplexFace& sub_face)
{
    Saturation sat = saturation_lattice(delta);
    const std::size_t r = sat.basis.size();
    RatMatrix B = to_rat(IntMatrix::from_columns(sat.basis, delta.vertices.at(0).size()));
    std::vector<IntVec> gens;
    for (auto& v : delta.vertices)
        for (auto& a : sub_face.vertices) {
            RatVec d = sub(v, a);
            if (is_zero(d)) continue;
            RatVec c;
            if (!solve(B, d, c)) throw DomainError("internal: face difference outside X(Delta)");
            gens.push_back(primitive(c));
        }
    return RationalCone::generated_by(gens, r);
}

SemigroupReport semigroup_generation(const ComplexFace& delta, const RatVec& alpha, const Integer& m)
{
    if (m < 1) throw DomainError("m must be positive");
    if (!std::binary_search(delta.vertices.begin(), delta.vertices.end(), alpha, lex_less))
        throw DomainError("alpha must be a vertex of the face");
    SemigroupReport rep;
    Saturation sat = saturation_lattice(delta);
    const std::size_t r = sat.basis.size();
    const std::size_t n = alpha.size();
    if (r == 0) return rep;
    RatMatrix B = to_rat(IntMatrix::from_columns(sat.basis, n));
    auto to_local = [&](const RatVec& v) {
        RatVec c;
        if (!solve(B, v, c)) throw DomainError("internal: face difference outside X(Delta)");
        return c;
    };
    auto to_ambient = [&](const IntVec& c) { return to_int(B.apply(to_rat(c))); };
    std::vector<RatVec> local;
    for (auto& v : delta.vertices) local.push_back(scale(to_local(sub(v, alpha)), Rational(m)));
    LatticePolytope P = LatticePolytope::from_points(local, r);
    std::vector<IntVec> pts;
    for (auto& p : P.lattice_points())
        if (!is_zero(p)) pts.push_back(p);

    std::vector<IntVec> nz;
    for (auto& v : local)
        if (!is_zero(v)) nz.push_back(primitive(v));
    RationalCone C = RationalCone::generated_by(nz, r);
    auto hb = hilbert_basis(C);

    std::map<IntVec, bool> memo;
    std::function<bool(const IntVec&)> representable = [&](const IntVec& x) -> bool {
        if (is_zero(x)) return true;
        auto it = memo.find(x);
        if (it != memo.end()) return it->second;
        bool ok = false;
        for (auto& p : pts) {
            IntVec rest = sub(x, p);
            if (C.contains(rest) && representable(rest)) {
                ok = true;
                break;
            }
        }
        memo[x] = ok;
        return ok;
    };
    for (auto& h : hb) {
        rep.primitives.push_back(to_ambient(h));
        if (rep.generated && !representable(h)) {
            rep.generated = false;
            rep.witness = to_ambient(h);
        }
    }
    for (auto& p : pts) rep.generators.push_back(to_ambient(p));
    return rep;
}

DIdentityReport d_function_checks(const VoronoiForm& f, long radius, long wr)
{
    DIdentityReport rep;
    const std::size_t g = f.rank();
    auto ws = box_points(g, wr);
    for (auto& xi : box_points(g, radius)) {
        RatVec x = to_rat(xi);
        try {
            Rational dx = f.D(x);
            ++rep.points;
            for (auto& w : ws) {
                ++rep.identities;
                Rational lhs = f.D(add(x, f.shift(w))) - dx;
                if (lhs != f.E(w) + dot(w, x)) {
                    rep.cocycle = false;
                    if (rep.counterexample.empty()) rep.counterexample = "x=" + vec_string(xi) + " w=" + vec_string(w);
                }
            }
        } catch (const DomainError& e) {
            rep.well_defined = false;
            if (rep.counterexample.empty()) rep.counterexample = e.what();
        }
    }
    return rep;
}

}  // namespace degenkit
