#include "degenkit/fans.hpp"

#include <algorithm>
#include <set>

namespace degenkit {

namespace {

std::vector<ComplexFace> all_faces(const ComplexFace& delta)
{
    std::vector<ComplexFace> out;
    auto P = LatticePolytope::from_points(delta.vertices, delta.vertices.at(0).size());
    for (auto& level : skeleton(P))
        for (auto& f : level) out.push_back(f);
    return out;
}

RationalCone cone_over(const std::vector<RatVec>& pts, std::size_t n)
{
    std::vector<IntVec> gens;
    for (auto& p : pts)
        if (!is_zero(p)) gens.push_back(primitive(p));
    return RationalCone::generated_by(gens, n);
}

RatVec rat_point(const IntVec& v) { return to_rat(v); }

RatVec sub_rat(const RatVec& a, const RatVec& b) { return sub(a, b); }

std::string coef_prefix(const Integer& k)
{
    if (k == 1) return "";
    if (k == -1) return "-";
    return k.str();
}

std::string f_combination(const IntVec& w)
{
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0) continue;
        Integer a = abs(w[i]);
        if (w[i] < 0)
            s += "-";
        else if (!s.empty())
            s += "+";
        s += (a == 1 ? std::string() : a.str()) + "f" + std::to_string(i + 1);
    }
    return s.empty() ? "0" : s;
}

}  // namespace

std::vector<RationalCone> cone_faces(const RationalCone& c)
{
    std::set<RationalCone> seen{c};
    std::vector<RationalCone> todo{c};
    while (!todo.empty()) {
        RationalCone x = todo.back();
        todo.pop_back();
        for (auto& f : x.facets())
            if (seen.insert(f).second) todo.push_back(f);
    }
    return {seen.begin(), seen.end()};
}

Fan Fan::from_cones(const std::vector<RationalCone>& cs, std::size_t ambient)
{
    Fan fan;
    fan.ambient = ambient;
    std::set<RationalCone> all, input(cs.begin(), cs.end()), proper_faces;
    for (auto& c : input)
        for (auto& f : cone_faces(c)) {
            all.insert(f);
            if (f != c) proper_faces.insert(f);
        }
    fan.cones.assign(all.begin(), all.end());
    for (auto& c : input)
        if (!proper_faces.count(c)) fan.maximal.push_back(c);
    return fan;
}

FanCheck check_fan(const Fan& f)
{
    FanCheck r;
    std::vector<std::vector<RationalCone>> faces;
    for (auto& c : f.maximal) faces.push_back(cone_faces(c));
    for (std::size_t i = 0; i < f.maximal.size(); ++i)
        for (std::size_t j = i + 1; j < f.maximal.size(); ++j) {
            RationalCone I = f.maximal[i].intersect(f.maximal[j]);
            bool fi = std::binary_search(faces[i].begin(), faces[i].end(), I);
            bool fj = std::binary_search(faces[j].begin(), faces[j].end(), I);
            if (!fi || !fj) {
                r.proper = false;
                if (r.defect.empty()) r.defect = "cones " + f.maximal[i].str() + " and " + f.maximal[j].str() +
                                                 " meet outside a common face";
            }
        }
    for (std::size_t i = 0; i < f.maximal.size(); ++i) {
        if (f.maximal[i].dim() != static_cast<int>(f.ambient)) {
            r.complete = false;
            if (r.defect.empty()) r.defect = "maximal cone " + f.maximal[i].str() + " is not full-dimensional";
            continue;
        }
        for (auto& F : f.maximal[i].facets()) {
            int n = 0;
            for (std::size_t j = 0; j < f.maximal.size(); ++j) {
                auto fs = f.maximal[j].facets();
                if (std::find(fs.begin(), fs.end(), F) != fs.end()) ++n;
            }
            if (n != 2) {
                r.complete = false;
                if (r.defect.empty())
                    r.defect = "facet " + F.str() + " lies in " + std::to_string(n) + " maximal cones";
            }
        }
    }
    if (f.maximal.empty()) r.complete = f.ambient == 0;
    return r;
}

RationalCone tau_cone(const VoronoiForm& f, const RatVec& alpha, const IntVec& u, const Rational& e)
{
    RatVec x0 = add(alpha, f.shift(u));
    LatticePolytope cut = f.cut(f.minimal_face(x0), e);
    std::vector<IntVec> gens;
    for (auto& c : cut.vertices()) {
        RatVec v{Rational(1)};
        v.insert(v.end(), c.begin(), c.end());
        gens.push_back(primitive(v));
    }
    return RationalCone::generated_by(gens, f.rank() + 1);
}

LatticePolytope cut_polytope(const VoronoiForm& f, const ComplexFace& delta, const Rational& e) { return f.cut(delta, e); }

bool tau_cone_inequalities_hold(const VoronoiForm& f, const RatVec& alpha, const IntVec& u, long radius,
                                const Rational& e)
{
    RatVec x0 = add(alpha, f.shift(u));
    RationalCone t = tau_cone(f, alpha, u, e);
    Rational d0 = f.D(x0);
    IntVec centre;
    for (auto& c : x0) centre.push_back(floor_q(c));
    for (auto& off : box_points(f.rank(), radius)) {
        RatVec y = to_rat(add(centre, off));
        Rational dy = f.D(y) - d0;
        RatVec diff = sub(y, x0);
        for (auto& r : t.rays()) {
            Rational val = e * dy * Rational(r[0]);
            for (std::size_t i = 0; i < diff.size(); ++i) val += Rational(r[i + 1]) * diff[i];
            if (val < 0) return false;
        }
    }
    return true;
}

KitFan fan_of_kit(const VoronoiForm& f, long window, const Rational& e)
{
    KitFan kf;
    const std::size_t g = f.rank();
    std::vector<RationalCone> maxcones;
    for (auto& a : f.sigma0().vertices()) {
        maxcones.push_back(cone_over(f.cut(f.minimal_face(a), e).vertices(), g));
        kf.slice_vertices.push_back(a);
    }
    kf.slice = Fan::from_cones(maxcones, g);
    // keep slice_vertices aligned with slice.maximal
    std::vector<RatVec> aligned;
    for (auto& m : kf.slice.maximal)
        for (std::size_t i = 0; i < maxcones.size(); ++i)
            if (maxcones[i] == m) {
                aligned.push_back(kf.slice_vertices[i]);
                break;
            }
    kf.slice_vertices = aligned;
    kf.check = check_fan(kf.slice);

    std::set<RationalCone> taus;
    for (auto& a : f.sigma0().lattice_points())
        for (auto& u : box_points(g, window)) taus.insert(tau_cone(f, rat_point(a), u, e));
    kf.tau_cones.assign(taus.begin(), taus.end());
    return kf;
}

FaceFans fan_of_face(const VoronoiForm& f, const ComplexFace& delta, const Rational& e)
{
    FaceFans ff;
    ff.sat = saturation_lattice(delta);
    const std::size_t k = ff.sat.basis.size();
    auto j = [&](const RatVec& v) {
        RatVec r;
        for (auto& b : ff.sat.basis) r.push_back(dot(b, v));
        return r;
    };
    ff.faces = all_faces(delta);
    LatticePolytope cut_delta = f.cut(delta, e);
    RatVec c0 = j(cut_delta.vertices().at(0));
    for (auto& v : cut_delta.vertices())
        if (j(v) != c0) throw DomainError("internal: Cut(Delta) is not orthogonal to X(Delta)");

    for (auto& sub : ff.faces) {
        std::vector<RatVec> pts;
        LatticePolytope cut = f.cut(sub, e);
        for (auto& v : cut.vertices()) pts.push_back(sub_rat(j(v), c0));
        ff.d_cones.push_back(cone_over(pts, k));
        ff.sigma_duals.push_back(k == 0 ? RationalCone::zero(0) : face_cone_local(delta, sub).dual());
    }
    ff.fan = Fan::from_cones(ff.d_cones, k);
    ff.fan_star = Fan::from_cones(ff.sigma_duals, k);
    ff.equal = ff.fan == ff.fan_star && ff.d_cones == ff.sigma_duals;
    ff.check = check_fan(ff.fan);
    return ff;
}

Rational SupportFunction::operator()(const RatVec& u) const
{
    for (std::size_t i = 0; i < cones.size(); ++i)
        if (cones[i].contains(u)) return dot(u, functionals[i]);
    throw DomainError("internal: support function cones do not cover " + vec_string(u));
}

SupportFunction support_function(const VoronoiForm& f, const IntVec& v, const Rational& e)
{
    SupportFunction h;
    h.v = v;
    const std::size_t g = f.rank();
    RatVec s = f.shift(v);
    for (auto& a : f.sigma0().vertices()) {
        h.alphas.push_back(a);
        h.functionals.push_back(add(a, s));
        h.cones.push_back(cone_over(f.cut(f.minimal_face(a), e).vertices(), g));
    }
    std::vector<RatVec> inner;
    for (auto& c : h.cones) {
        RatVec p(g, Rational(0));
        for (auto& r : c.rays()) p = add(p, to_rat(r));
        inner.push_back(p);
    }
    for (std::size_t i = 0; i < h.cones.size(); ++i)
        for (std::size_t j = 0; j < h.cones.size(); ++j) {
            if (i == j) continue;
            if (!(dot(inner[j], h.functionals[i]) > dot(inner[j], h.functionals[j]))) {
                h.strictly_convex = false;
                if (h.defect.empty())
                    h.defect = "not strictly convex between " + vec_string(h.alphas[i]) + " and " + vec_string(h.alphas[j]);
            }
            if (j < i) continue;
            RationalCone I = h.cones[i].intersect(h.cones[j]);
            if (I.dim() != static_cast<int>(g) - 1) continue;
            for (auto& r : I.generators())
                if (dot(r, h.functionals[i]) != dot(r, h.functionals[j])) {
                    h.continuous = false;
                    if (h.defect.empty())
                        h.defect = "discontinuous across " + I.str();
                }
        }
    return h;
}

LatticePolytope sf_box(const SupportFunction& h, const ComplexFace& delta)
{
    const std::size_t n = delta.vertices.at(0).size();
    Saturation sat = saturation_lattice(delta);
    const std::size_t k = sat.basis.size();
    const RatVec& q0 = delta.vertices[0];
    std::vector<Facet> ineqs;
    for (std::size_t i = 0; i < h.cones.size(); ++i)
        for (auto& r : h.cones[i].rays()) {
            IntVec nrm;
            for (auto& b : sat.basis) nrm.push_back(dot(b, r));
            Rational off = dot(r, q0) - dot(r, h.functionals[i]);
            if (is_zero(nrm)) {
                if (off < 0) throw DomainError("support-function box is empty");
                continue;
            }
            Integer c = content(nrm);
            ineqs.push_back({nrm, off});
            for (auto& x : ineqs.back().normal) x /= c;
            ineqs.back().offset /= c;
        }
    if (k == 0) return LatticePolytope::from_points({q0}, n);
    auto local = LatticePolytope::from_inequalities(ineqs, k);
    std::vector<RatVec> pts;
    RatMatrix B = to_rat(IntMatrix::from_columns(sat.basis, n));
    for (auto& c : local.vertices()) pts.push_back(add(q0, B.apply(c)));
    return LatticePolytope::from_points(pts, n);
}

std::string ChartMonomial::str() const
{
    std::string s;
    if (s_exp != 0) s = "s^" + to_string(s_exp);
    for (std::size_t i = 0; i < weight.size(); ++i) {
        if (weight[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += "w" + std::to_string(i + 1);
        if (weight[i] != 1) s += "^" + weight[i].str();
    }
    return s.empty() ? "1" : s;
}

std::optional<ChartMonomial> ChartPresentation::monomial(const IntVec& x) const
{
    for (auto& c : cells)
        if (c.cone.contains(x)) return ChartMonomial{e * Rational(dot(c.w, x)), x};
    return std::nullopt;
}

std::optional<ChartMonomial> ChartPresentation::product(const IntVec& x, const IntVec& y) const
{
    for (auto& c : cells)
        if (c.cone.contains(x) && c.cone.contains(y)) {
            IntVec z = add(x, y);
            return ChartMonomial{e * Rational(dot(c.w, z)), z};
        }
    return std::nullopt;
}

ChartPresentation chart_ring(const VoronoiForm& f, const RatVec& alpha, const IntVec& u, const Rational& e)
{
    if (!is_integral(alpha) || !f.sigma0().contains(alpha))
        throw DomainError("alpha " + vec_string(alpha) + " is not a lattice point of Sigma(0)");
    const std::size_t g = f.rank();
    ChartPresentation cp;
    cp.alpha = alpha;
    cp.u = u;
    cp.e = e;
    cp.interior = f.sigma0().relint_contains(alpha);
    cp.tau_dual = tau_cone(f, alpha, u, e).dual();
    for (auto& gen : semigroup_generators(cp.tau_dual))
        cp.generators.push_back({Rational(gen[0]), IntVec(gen.begin() + 1, gen.end())});
    std::sort(cp.generators.begin(), cp.generators.end());
    RatVec x0 = add(alpha, f.shift(u));
    for (auto& w : f.cells_containing(x0)) {
        ChartCell cell;
        cell.w = w;
        std::vector<RatVec> pts;
        LatticePolytope sigma_w = f.cell(w);
        for (auto& v : sigma_w.vertices()) pts.push_back(sub(v, x0));
        cell.cone = cone_over(pts, g);
        for (auto& x : semigroup_generators(cell.cone)) cell.generators.push_back({e * Rational(dot(w, x)), x});
        cp.cells.push_back(cell);
    }
    return cp;
}

std::string vertex_name(const RatVec& v)
{
    if (is_zero(v)) return "0";
    if (!is_integral(v)) return vec_string(v);
    IntVec x = to_int(v);
    const std::size_t g = x.size();
    std::size_t nz = 0, idx = 0;
    for (std::size_t i = 0; i < g; ++i)
        if (x[i] != 0) {
            ++nz;
            idx = i;
        }
    if (nz == 1) return coef_prefix(x[idx]) + "m" + std::to_string(idx + 1);
    if (g >= 2 && std::all_of(x.begin(), x.end(), [&](const Integer& c) { return c == x[0]; }))
        return coef_prefix(-x[0]) + "m" + std::to_string(g + 1);
    return vec_string(x);
}

std::string face_label(const VoronoiForm& f, const ComplexFace& delta)
{
    if (delta.dim == static_cast<int>(f.rank())) {
        RatVec w = f.M_inverse().apply(sub(delta.centroid(), f.sigma0().centroid()));
        if (!is_integral(w)) throw DomainError("internal: top cell is not a translate of Sigma(0)");
        return "Sigma(" + f_combination(to_int(w)) + ")";
    }
    std::string s = delta.dim == 0 ? "vertex[" : delta.dim == 1 ? "edge[" : "face[";
    for (std::size_t i = 0; i < delta.vertices.size(); ++i) s += (i ? "," : "") + vertex_name(delta.vertices[i]);
    return s + "]";
}

ComplexFace Stratification::canonical(const ComplexFace& d) const
{
    RatVec z = period_inv.apply(d.centroid());
    IntVec k;
    for (auto& c : z) k.push_back(floor_q(c));
    RatVec shift = period.apply(to_rat(k));
    return make_face([&] {
        std::vector<RatVec> vs;
        for (auto& v : d.vertices) vs.push_back(sub(v, shift));
        return vs;
    }());
}

std::size_t Stratification::class_of(const ComplexFace& d) const
{
    auto it = index.find(canonical(d).vertices);
    if (it == index.end()) throw DomainError("face " + vec_string(d.vertices.at(0)) + "... is not in the complex");
    return it->second;
}

std::size_t Stratification::components() const
{
    return static_cast<std::size_t>(std::count_if(classes.begin(), classes.end(), [](const StratumClass& c) { return c.is_component; }));
}

std::vector<std::size_t> Stratification::counts_by_cell_dim() const
{
    std::vector<std::size_t> out(period.rows + 1, 0);
    for (auto& c : classes) ++out[static_cast<std::size_t>(c.cell_dim)];
    return out;
}

Stratification stratification(const VoronoiForm& f, const IntMatrix& beta, int dim_A, const Rational& e)
{
    const std::size_t g = f.rank();
    Stratification s;
    s.period = f.M() * to_rat(beta);
    s.period_inv = inverse(s.period);
    std::vector<std::pair<ComplexFace, ComplexFace>> found;  // canonical, display
    std::set<std::vector<RatVec>> seen;
    auto faces = f.faces_of_sigma0();
    for (auto& r : coset_representatives(beta)) {
        RatVec sh = f.shift(r);
        for (auto& F : faces) {
            ComplexFace d = F.translated(sh);
            ComplexFace c = s.canonical(d);
            if (seen.insert(c.vertices).second) found.push_back({c, d});
        }
    }
    std::sort(found.begin(), found.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (auto& [c, d] : found) {
        StratumClass sc;
        sc.id = s.classes.size();
        sc.cell_dim = c.dim;
        sc.dim = c.dim + dim_A;
        sc.is_component = c.dim == static_cast<int>(g);
        sc.rep = d;
        sc.cut = f.cut(d, e);
        sc.label = face_label(f, d);
        s.index[c.vertices] = sc.id;
        s.classes.push_back(sc);
    }
    for (auto& sc : s.classes) {
        std::set<std::size_t> fs;
        for (auto& F : all_faces(sc.rep)) fs.insert(s.class_of(F));
        sc.faces.assign(fs.begin(), fs.end());
    }
    return s;
}

Specialization specialize(const VoronoiForm& f, const RatVec& cutlog, const Rational& e)
{
    const std::size_t g = f.rank();
    if (cutlog.size() != g) throw DomainError("cutlog must have " + std::to_string(g) + " entries");
    std::vector<Specialization> hits;
    for (auto& F : f.faces_of_sigma0()) {
        LatticePolytope cut = f.cut(F, e);
        RatVec lo, hi;
        cut.bounding_box(lo, hi);
        IntVec a(g), b(g);
        bool empty = false;
        for (std::size_t i = 0; i < g; ++i) {
            a[i] = ceil_q((lo[i] - cutlog[i]) / e);
            b[i] = floor_q((hi[i] - cutlog[i]) / e);
            if (a[i] > b[i]) empty = true;
        }
        if (empty) continue;
        IntVec w = a;
        for (;;) {
            if (cut.relint_contains(add(cutlog, scale(to_rat(w), e)))) {
                ComplexFace d = F.translated(f.shift(w));
                bool dup = std::any_of(hits.begin(), hits.end(), [&](const Specialization& h) { return h.delta == d; });
                if (!dup) hits.push_back({d, cut.translated(scale(to_rat(w), -e)), face_label(f, d)});
            }
            std::size_t i = 0;
            while (i < g && w[i] == b[i]) {
                w[i] = a[i];
                ++i;
            }
            if (i == g) break;
            w[i] += 1;
        }
    }
    if (hits.size() != 1)
        throw DomainError("internal: " + std::to_string(hits.size()) + " strata match cutlog " + vec_string(cutlog));
    return hits[0];
}

std::vector<Integer> torus_cell_cohomology(const Stratification& s, int dim_A)
{
    if (dim_A > 0) throw DomainError("abelian part unsupported");
    const std::size_t g = s.period.rows;
    std::vector<std::vector<std::size_t>> by_dim(g + 1);
    std::vector<std::size_t> pos(s.classes.size());
    std::vector<std::vector<RatVec>> orient(s.classes.size());
    for (auto& c : s.classes) {
        pos[c.id] = by_dim[static_cast<std::size_t>(c.cell_dim)].size();
        by_dim[static_cast<std::size_t>(c.cell_dim)].push_back(c.id);
        std::vector<RatVec> diffs;
        for (auto& v : c.rep.vertices) diffs.push_back(sub(v, c.rep.vertices[0]));
        for (auto i : independent_subset(diffs)) orient[c.id].push_back(diffs[i]);
    }
    // boundary[k] : C_k -> C_{k-1}
    std::vector<std::size_t> ranks(g + 2, 0);
    for (std::size_t k = 1; k <= g; ++k) {
        RatMatrix d(by_dim[k - 1].size(), by_dim[k].size());
        for (auto id : by_dim[k]) {
            const auto& c = s.classes[id];
            RatMatrix Bc = RatMatrix::from_columns(orient[id], g);
            RatVec cc = c.rep.centroid();
            auto P = LatticePolytope::from_points(c.rep.vertices, g);
            auto sk = skeleton(P);
            for (auto& G : sk[k - 1]) {
                std::size_t a = s.class_of(G);
                std::vector<RatVec> cols{sub(G.centroid(), cc)};
                for (auto& b : orient[a]) cols.push_back(b);
                RatMatrix loc(k, k);
                for (std::size_t j = 0; j < k; ++j) {
                    RatVec x;
                    if (!solve(Bc, cols[j], x)) throw DomainError("internal: facet outside the cell span");
                    for (std::size_t i = 0; i < k; ++i) loc(i, j) = x[i];
                }
                Rational det = determinant(loc);
                if (det == 0) throw DomainError("internal: degenerate facet orientation");
                d(pos[a], pos[id]) += det > 0 ? 1 : -1;
            }
        }
        ranks[k] = rank(d);
    }
    std::vector<Integer> betti;
    for (std::size_t q = 0; q <= g; ++q)
        betti.push_back(Integer(by_dim[q].size()) - Integer(ranks[q]) - Integer(ranks[q + 1]));
    return betti;
}

}  // namespace degenkit
