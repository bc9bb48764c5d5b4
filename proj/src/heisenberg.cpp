#include "degenkit/heisenberg.hpp"

#include <cmath>
#include <functional>
#include <numeric>

namespace degenkit {

namespace {

long mod(long a, long m) { return ((a % m) + m) % m; }

}  // namespace

HeisenbergGroup::HeisenbergGroup(FiniteAbelianGroup H, std::size_t cap) : H_(std::move(H))
{
    if (H_.size() > cap) throw DomainError("|H| = " + std::to_string(H_.size()) + " exceeds the cap " + std::to_string(cap));
    M_ = H_.exponent();
}

HeisenbergElement HeisenbergGroup::element(std::size_t i) const
{
    const std::size_t n = H_.size();
    HeisenbergElement g;
    g.alpha = i % n;
    i /= n;
    g.z = i % n;
    g.a = static_cast<long>(i / n);
    return g;
}

std::size_t HeisenbergGroup::index(const HeisenbergElement& g) const
{
    const std::size_t n = H_.size();
    return (static_cast<std::size_t>(mod(g.a, M_)) * n + g.z) * n + g.alpha;
}

long HeisenbergGroup::pair(std::size_t alpha, std::size_t z) const
{
    auto k = H_.element(alpha), x = H_.element(z);
    long s = 0;
    for (std::size_t i = 0; i < k.size(); ++i) s += k[i] * x[i] * (M_ / H_.divisors()[i]);
    return mod(s, M_);
}

HeisenbergElement HeisenbergGroup::mul(const HeisenbergElement& g, const HeisenbergElement& h) const
{
    return {mod(g.a + h.a + pair(h.alpha, g.z), M_), H_.add(g.z, h.z), H_.add(g.alpha, h.alpha)};
}

HeisenbergElement HeisenbergGroup::inverse(const HeisenbergElement& g) const
{
    // (a,z,alpha)(b,-z,-alpha) = (a b (-alpha)(z), 0, 0)
    std::size_t nz = H_.neg(g.z), na = H_.neg(g.alpha);
    return {mod(-g.a - pair(na, g.z), M_), nz, na};
}

long HeisenbergGroup::e_H(std::size_t z, std::size_t alpha, std::size_t w, std::size_t beta) const
{
    return mod(pair(beta, z) - pair(alpha, w), M_);
}

MonomialMatrix rho(const HeisenbergGroup& G, const HeisenbergElement& g)
{
    const std::size_t n = G.H().size();
    MonomialMatrix R;
    R.col.resize(n);
    R.exp.resize(n);
    for (std::size_t z = 0; z < n; ++z) {
        R.col[z] = G.H().add(g.z, z);
        R.exp[z] = mod(g.a + G.pair(g.alpha, z), G.M());
    }
    return R;
}

MonomialMatrix compose(const MonomialMatrix& A, const MonomialMatrix& B, long M)
{
    MonomialMatrix C;
    C.col.resize(A.col.size());
    C.exp.resize(A.col.size());
    for (std::size_t i = 0; i < A.col.size(); ++i) {
        C.col[i] = B.col[A.col[i]];
        C.exp[i] = mod(A.exp[i] + B.exp[A.col[i]], M);
    }
    return C;
}

std::size_t commutant_dimension(const HeisenbergGroup& G)
{
    const std::size_t n = G.H().size();
    const long M = G.M();
    // C rho = rho C for monomial rho(row i -> col s(i), phase e_i):
    // (C rho)[i][s(l)] = C[i][l] zeta^{e_l}, (rho C)[i][j] = zeta^{e_i} C[s(i)][j]
    // so C[s(i)][s(l)] = zeta^{e_l - e_i} C[i][l].
    std::vector<std::size_t> parent(n * n);
    std::vector<long> pot(n * n, 0);  // C[v] = zeta^{pot[v]} C[root]
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<bool> bad(n * n, false);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t v) -> std::size_t {
        if (parent[v] == v) return v;
        std::size_t r = find(parent[v]);
        pot[v] = mod(pot[v] + pot[parent[v]], M);
        parent[v] = r;
        return r;
    };
    for (std::size_t gi = 0; gi < G.order(); ++gi) {
        auto R = rho(G, G.element(gi));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                std::size_t u = i * n + l, v = R.col[i] * n + R.col[l];
                long w = mod(R.exp[l] - R.exp[i], M);  // C[v] = zeta^w C[u]
                std::size_t ru = find(u), rv = find(v);
                if (ru == rv) {
                    if (mod(pot[v] - pot[u] - w, M) != 0) bad[ru] = true;
                } else {
                    // attach rv under ru: C[rv] = zeta^{pot[u] + w - pot[v]} C[ru]
                    parent[rv] = ru;
                    pot[rv] = mod(pot[u] + w - pot[v], M);
                    if (bad[rv]) bad[ru] = true;
                }
            }
    }
    std::size_t dim = 0;
    for (std::size_t v = 0; v < n * n; ++v)
        if (find(v) == v && !bad[v]) ++dim;
    return dim;
}

HeisenbergReport heisenberg_checks(const HeisenbergGroup& G, bool parallel)
{
    HeisenbergReport r;
    const std::size_t N = G.order(), n = G.H().size();
    const long M = G.M();
    r.order = N;
    auto note = [&](bool& flag, const std::string& msg) {
        if (flag && r.failure.empty()) r.failure = msg;
        flag = false;
    };
    std::vector<HeisenbergElement> el(N);
    for (std::size_t i = 0; i < N; ++i) el[i] = G.element(i);
    std::vector<std::size_t> table(N * N);
    const long NN = static_cast<long>(N);
#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < NN; ++i)
        for (std::size_t j = 0; j < N; ++j)
            table[static_cast<std::size_t>(i) * N + j] = G.index(G.mul(el[static_cast<std::size_t>(i)], el[j]));

    std::vector<char> assoc_fail(N, 0);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < NN; ++i) {
        std::size_t x = static_cast<std::size_t>(i);
        for (std::size_t y = 0; y < N && !assoc_fail[x]; ++y)
            for (std::size_t z = 0; z < N; ++z)
                if (table[table[x * N + y] * N + z] != table[x * N + table[y * N + z]]) {
                    assoc_fail[x] = 1;
                    break;
                }
    }
    for (std::size_t x = 0; x < N; ++x)
        if (assoc_fail[x]) {
            note(r.associative, "associativity fails");
            break;
        }

    const std::size_t e = G.index({0, 0, 0});
    for (std::size_t x = 0; x < N; ++x) {
        if (table[e * N + x] != x || table[x * N + e] != x) note(r.identity, "identity fails");
        std::size_t ix = G.index(G.inverse(el[x]));
        if (table[x * N + ix] != e || table[ix * N + x] != e) note(r.inverses, "inverse fails");
    }
    for (long a = 0; a < M; ++a) {
        std::size_t c = G.index({a, 0, 0});
        for (std::size_t x = 0; x < N; ++x)
            if (table[c * N + x] != table[x * N + c]) note(r.central, "center is not central");
    }
    // commutator g h g^-1 h^-1 = (e_H, 0, 0)
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y) {
            auto gh = G.mul(el[x], el[y]);
            auto c = G.mul(G.mul(gh, G.inverse(el[x])), G.inverse(el[y]));
            HeisenbergElement want{G.e_H(el[x].z, el[x].alpha, el[y].z, el[y].alpha), 0, 0};
            if (!(c == want)) note(r.commutator_is_eH, "commutator differs from e_H");
        }
    // e_H on K(H) = H + H^dual
    for (std::size_t z = 0; z < n; ++z)
        for (std::size_t a = 0; a < n; ++a) {
            if (G.e_H(z, a, z, a) != 0) note(r.eH_alternating, "e_H is not alternating");
            bool nonzero = z != 0 || a != 0, witnessed = false;
            for (std::size_t w = 0; w < n; ++w)
                for (std::size_t b = 0; b < n; ++b) {
                    long v = G.e_H(z, a, w, b);
                    if (v != 0) witnessed = true;
                    for (std::size_t w2 = 0; w2 < n; ++w2)
                        for (std::size_t b2 = 0; b2 < n; ++b2) {
                            long lhs = G.e_H(z, a, G.H().add(w, w2), G.H().add(b, b2));
                            if (lhs != mod(v + G.e_H(z, a, w2, b2), M)) note(r.eH_bilinear, "e_H is not bilinear");
                        }
                }
            if (nonzero && !witnessed) note(r.eH_nondegenerate, "e_H is degenerate");
        }
    // rho
    std::vector<MonomialMatrix> reps(N);
    for (std::size_t x = 0; x < N; ++x) reps[x] = rho(G, el[x]);
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y)
            if (!(compose(reps[x], reps[y], M) == reps[table[x * N + y]]))
                note(r.rho_homomorphism, "rho is not a homomorphism");
    for (long a = 0; a < M; ++a) {
        const auto& R = reps[G.index({a, 0, 0})];
        for (std::size_t z = 0; z < n; ++z)
            if (R.col[z] != z || R.exp[z] != a) note(r.weight_one, "center does not act by scalars");
    }
    r.commutant_dim = commutant_dimension(G);
    if (r.commutant_dim != 1 && r.failure.empty()) r.failure = "commutant dimension " + std::to_string(r.commutant_dim);
    return r;
}

namespace {

struct ClassMap {
    IntMatrix basis_inv;
    IntVec divisors;
    IntVec coords(const IntVec& x) const
    {
        IntVec c = basis_inv.apply(x);
        for (std::size_t s = 0; s < c.size(); ++s)
            if (divisors[s] != 0) {
                c[s] %= divisors[s];
                if (c[s] < 0) c[s] += divisors[s];
            }
        return c;
    }
};

std::map<IntVec, ValuedScalar> build_standard(const DegenerationDatum& d, const FullExtension& fx, const IntVec& z,
                                              const Rational& cutoff)
{
    const std::size_t g = d.rank;
    IntMatrix B = d.valuation_matrix();
    RatMatrix Q = to_rat(B * d.phi).scaled(Rational(1, 2));
    Rational c0 = fx.psi_at(z).t_exponent();
    std::map<IntVec, ValuedScalar> out;
    if (cutoff <= c0 && cutoff <= 0) return out;
    IntVec b = B.apply(z);
    double bn = 0;
    for (auto& bi : b) bn += bi.convert_to<double>() * bi.convert_to<double>();
    bn = std::sqrt(bn);
    double lam = certified_min_eigen_bound(Q).convert_to<double>();
    double gap = std::max(0.0, (cutoff - c0).convert_to<double>());
    double R = (bn + std::sqrt(bn * bn + 4 * lam * gap)) / (2 * lam);
    long r = static_cast<long>(std::ceil(R)) + 1;
    for (auto& y : box_points(g, r)) {
        IntVec x = add(z, d.phi.apply(y));
        ValuedScalar c = fx.psi_at(x);
        if (c.t_exponent() < cutoff) out.emplace(x, c);
    }
    return out;
}

}  // namespace

StandardBasisReport standard_basis_check(const DegenerationDatum& d, const Rational& cutoff, std::size_t cap)
{
    FullExtension fx = extend_to_X(d);
    const std::size_t g = d.rank;
    StandardBasisReport rep;
    Integer order = abs(determinant(d.phi));
    if (order > cap) throw DomainError("|X/phi(Y)| = " + order.str() + " exceeds the cap " + std::to_string(cap));
    for (auto& e : fx.divisors)
        if (e != 1) rep.h1.push_back(static_cast<long>(to_ll(e)));
    ClassMap cm{fx.basis_inv, fx.divisors};
    rep.reps = coset_representatives(d.phi);
    std::map<IntVec, std::map<IntVec, ValuedScalar>> series;
    for (auto& z : rep.reps) {
        auto s = build_standard(d, fx, z, cutoff);
        if (s.empty()) throw DomainError("insufficient cutoff");
        rep.terms.push_back(s.size());
        // character law: all weights in one class
        IntVec cz = cm.coords(z);
        for (auto& [x, c] : s)
            if (cm.coords(x) != cz) {
                rep.character_law = false;
                if (rep.failure.empty()) rep.failure = "weight " + vec_string(x) + " leaves the class of " + vec_string(z);
            }
        series[z] = std::move(s);
    }
    // translation law for the unit shifts x' = e_j
    for (std::size_t j = 0; j < g; ++j) {
        IntVec xp(g, Integer(0));
        xp[j] = 1;
        ValuedScalar k = fx.psi_at(xp);
        for (auto& z : rep.reps) {
            IntVec target_rep = add(z, xp);
            auto target = build_standard(d, fx, target_rep, cutoff);
            Rational deep = cutoff;
            for (auto& [x, c] : target) deep = std::max(deep, Rational(fx.psi_at(sub(x, xp)).t_exponent() + 1));
            auto src = build_standard(d, fx, z, deep);
            std::map<IntVec, ValuedScalar> moved;
            for (auto& [x, c] : src) {
                ValuedScalar v = c * k * fx.tau_at(xp, x);
                if (v.t_exponent() < cutoff) moved.emplace(add(x, xp), v);
            }
            if (moved != target) {
                rep.translation_law = false;
                if (rep.failure.empty()) rep.failure = "shift by " + vec_string(xp) + " fails at " + vec_string(z);
            }
        }
    }
    return rep;
}

}  // namespace degenkit
