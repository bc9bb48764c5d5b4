#include "degenkit/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace degenkit {

namespace {

struct ParallelepipedBox {
    std::vector<long long> lo, hi;
    std::vector<long long> adj;  // row-major adjugate times sign(det)
    long long det = 0;           // |det L|
    std::size_t g = 0;
};

ParallelepipedBox make_box(const IntMatrix& L)
{
    ParallelepipedBox b;
    b.g = L.rows;
    Integer d = determinant(L);
    if (d == 0) throw DomainError("lattice matrix is singular");
    RatMatrix inv = inverse(to_rat(L));
    int s = d > 0 ? 1 : -1;
    b.det = to_ll(abs(d));
    for (std::size_t i = 0; i < b.g; ++i)
        for (std::size_t j = 0; j < b.g; ++j) b.adj.push_back(to_ll(num(inv(i, j) * Rational(d) * s)));
    for (std::size_t i = 0; i < b.g; ++i) {
        long long lo = 0, hi = 0;
        for (std::size_t j = 0; j < b.g; ++j) {
            long long v = to_ll(L(i, j));
            (v < 0 ? lo : hi) += v;
        }
        b.lo.push_back(lo);
        b.hi.push_back(hi);
    }
    return b;
}

// count of points with fixed first coordinate x0
long long count_slice(const ParallelepipedBox& b, long long x0)
{
    const std::size_t g = b.g;
    std::vector<long long> x(g);
    x[0] = x0;
    for (std::size_t i = 1; i < g; ++i) x[i] = b.lo[i];
    long long n = 0;
    for (;;) {
        bool in = true;
        for (std::size_t i = 0; i < g && in; ++i) {
            long long c = 0;
            for (std::size_t j = 0; j < g; ++j) c += b.adj[i * g + j] * x[j];
            in = c >= 0 && c < b.det;
        }
        if (in) ++n;
        std::size_t i = 1;
        while (i < g && x[i] == b.hi[i]) {
            x[i] = b.lo[i];
            ++i;
        }
        if (i >= g) break;
        ++x[i];
    }
    return n;
}

Complex theta_term(const CMatrix& W, const std::vector<double>& shift, const std::vector<Complex>& dz,
                   const std::vector<long>& m)
{
    const std::size_t g = shift.size();
    std::vector<double> n(g);
    for (std::size_t i = 0; i < g; ++i) n[i] = static_cast<double>(m[i]) + shift[i];
    Complex q = 0;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) q += n[i] * W[i][j] * n[j];
    Complex arg = q / 2.0;
    for (std::size_t i = 0; i < g; ++i) arg += n[i] * dz[i];
    return std::exp(Complex(0, 2 * std::numbers::pi) * arg);
}

bool triple_ok(std::size_t n, const std::vector<std::size_t>& add, const std::vector<ValuedScalar>& phi,
               const ActionTable& act, std::size_t x, std::size_t y, std::size_t z)
{
    ValuedScalar lhs = phi[x * n + y] * phi[add[x * n + y] * n + z];
    ValuedScalar a = phi[y * n + z];
    if (!act.empty() && act[x] < 0) a = a.inverse();
    ValuedScalar rhs = a * phi[x * n + add[y * n + z]];
    return lhs == rhs;
}

// phi as int64 exponent rows (one column per coordinate, common denominators cleared) plus signs
struct DenseCochain {
    bool ok = false;
    std::size_t k = 0;
    std::vector<long long> e;
    std::vector<int> s;
};

DenseCochain dense_of(const std::vector<ValuedScalar>& phi)
{
    DenseCochain d;
    std::vector<Integer> primes;
    for (auto& v : phi)
        for (auto& [p, q] : v.unit_part())
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    d.k = primes.size() + 1;
    std::vector<Integer> den_l(d.k, Integer(1));
    auto coord = [&](const ValuedScalar& v, std::size_t c) -> Rational {
        if (c == 0) return v.t_exponent();
        auto it = v.unit_part().find(primes[c - 1]);
        return it == v.unit_part().end() ? Rational(0) : it->second;
    };
    for (auto& v : phi)
        for (std::size_t c = 0; c < d.k; ++c) den_l[c] = lcm(den_l[c], den(coord(v, c)));
    const Integer bound = Integer(1) << 40;
    d.e.resize(phi.size() * d.k);
    d.s.resize(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) {
        d.s[i] = phi[i].sign();
        for (std::size_t c = 0; c < d.k; ++c) {
            Rational q = coord(phi[i], c) * Rational(den_l[c]);
            if (abs(num(q)) > bound) return d;
            d.e[i * d.k + c] = static_cast<long long>(num(q));
        }
    }
    d.ok = true;
    return d;
}

bool dense_triple_ok(const DenseCochain& d, std::size_t n, const std::vector<std::size_t>& add,
                     const ActionTable& act, std::size_t x, std::size_t y, std::size_t z)
{
    const std::size_t a = x * n + y, b = add[x * n + y] * n + z, c = y * n + z, e = x * n + add[y * n + z];
    if (d.s[a] * d.s[b] != d.s[c] * d.s[e]) return false;
    const long long w = (!act.empty() && act[x] < 0) ? -1 : 1;
    for (std::size_t j = 0; j < d.k; ++j)
        if (d.e[a * d.k + j] + d.e[b * d.k + j] != w * d.e[c * d.k + j] + d.e[e * d.k + j]) return false;
    return true;
}

}  // namespace

Integer count_classes_serial(const IntMatrix& L)
{
    auto b = make_box(L);
    long long n = 0;
    for (long long x0 = b.lo[0]; x0 <= b.hi[0]; ++x0) n += count_slice(b, x0);
    return n;
}

Integer count_classes_parallel(const IntMatrix& L)
{
    auto b = make_box(L);
    long long n = 0;
#pragma omp parallel for reduction(+ : n) schedule(dynamic)
    for (long long x0 = b.lo[0]; x0 <= b.hi[0]; ++x0) n += count_slice(b, x0);
    return n;
}

std::vector<std::vector<long>> norm_ordered_points(std::size_t g, long r)
{
    std::vector<std::vector<long>> pts;
    std::vector<long> x(g, -r);
    for (;;) {
        pts.push_back(x);
        std::size_t i = 0;
        while (i < g && x[i] == r) x[i++] = -r;
        if (i == g) break;
        ++x[i];
    }
    auto norm = [](const std::vector<long>& v) {
        long s = 0;
        for (long c : v) s += c * c;
        return s;
    };
    std::stable_sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
        long na = norm(a), nb = norm(b);
        return na != nb ? na < nb : a < b;
    });
    return pts;
}

Complex theta_sum_serial(const CMatrix& W, const std::vector<double>& shift, const std::vector<Complex>& dz,
                         const std::vector<std::vector<long>>& pts)
{
    Complex s = 0;
    for (auto& m : pts) s += theta_term(W, shift, dz, m);
    return s;
}

Complex theta_sum_parallel(const CMatrix& W, const std::vector<double>& shift, const std::vector<Complex>& dz,
                           const std::vector<std::vector<long>>& pts)
{
    std::vector<Complex> terms(pts.size());
    const long n = static_cast<long>(pts.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) terms[static_cast<std::size_t>(i)] = theta_term(W, shift, dz, pts[static_cast<std::size_t>(i)]);
    Complex s = 0;
    for (auto& t : terms) s += t;
    return s;
}

TripleFailure cocycle_triples_serial(std::size_t n, const std::vector<std::size_t>& add,
                                     const std::vector<ValuedScalar>& phi, const ActionTable& act)
{
    const DenseCochain d = dense_of(phi);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (!(d.ok ? dense_triple_ok(d, n, add, act, x, y, z) : triple_ok(n, add, phi, act, x, y, z)))
                    return {true, x, y, z};
    return {};
}

TripleFailure cocycle_triples_parallel(std::size_t n, const std::vector<std::size_t>& add,
                                       const std::vector<ValuedScalar>& phi, const ActionTable& act)
{
    std::vector<TripleFailure> per(n);
    const long nn = static_cast<long>(n);
    const DenseCochain d = dense_of(phi);
#pragma omp parallel for schedule(dynamic) if (n >= 16)
    for (long xi = 0; xi < nn; ++xi) {
        std::size_t x = static_cast<std::size_t>(xi);
        for (std::size_t y = 0; y < n && !per[x].found; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (!(d.ok ? dense_triple_ok(d, n, add, act, x, y, z) : triple_ok(n, add, phi, act, x, y, z))) {
                    per[x] = {true, x, y, z};
                    break;
                }
    }
    for (auto& f : per)
        if (f.found) return f;
    return {};
}

DIdentityReport d_function_checks_parallel(const VoronoiForm& f, long radius, long wr)
{
    const std::size_t g = f.rank();
    auto xs = box_points(g, radius);
    auto ws = box_points(g, wr);
    std::vector<DIdentityReport> per(xs.size());
    const long n = static_cast<long>(xs.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        auto& rep = per[static_cast<std::size_t>(i)];
        const IntVec& xi = xs[static_cast<std::size_t>(i)];
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
    DIdentityReport total;
    for (auto& r : per) {
        total.points += r.points;
        total.identities += r.identities;
        total.well_defined = total.well_defined && r.well_defined;
        total.cocycle = total.cocycle && r.cocycle;
        if (total.counterexample.empty()) total.counterexample = r.counterexample;
    }
    return total;
}

}  // namespace degenkit
