#include "degenkit/lattice.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace degenkit {

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b)
{
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b)
{
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows; ++i) std::swap(m(i, a), m(i, b));
}

// row a += f * row b
void add_row(IntMatrix& m, std::size_t a, std::size_t b, const Integer& f)
{
    for (std::size_t j = 0; j < m.cols; ++j) m(a, j) += f * m(b, j);
}

void add_col(IntMatrix& m, std::size_t a, std::size_t b, const Integer& f)
{
    for (std::size_t i = 0; i < m.rows; ++i) m(i, a) += f * m(i, b);
}

}  // namespace

SnfDecomposition smith_normal_form(const IntMatrix& m)
{
    std::size_t r = m.rows, c = m.cols;
    IntMatrix D = m, U = IntMatrix::identity(r), V = IntMatrix::identity(c);
    std::size_t n = std::min(r, c);
    for (std::size_t k = 0; k < n; ++k) {
        for (;;) {
            // minimal |entry| pivot in the trailing block, row-major tie-break
            bool found = false;
            std::size_t pi = k, pj = k;
            Integer best = 0;
            for (std::size_t i = k; i < r; ++i)
                for (std::size_t j = k; j < c; ++j) {
                    if (D(i, j) == 0) continue;
                    Integer v = abs(D(i, j));
                    if (!found || v < best) {
                        found = true;
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) goto done;
            swap_rows(D, k, pi);
            swap_rows(U, k, pi);
            swap_cols(D, k, pj);
            swap_cols(V, k, pj);
            bool clean = true;
            for (std::size_t i = k + 1; i < r; ++i) {
                if (D(i, k) == 0) continue;
                Integer q = D(i, k) / D(k, k);
                add_row(D, i, k, -q);
                add_row(U, i, k, -q);
                if (D(i, k) != 0) clean = false;
            }
            for (std::size_t j = k + 1; j < c; ++j) {
                if (D(k, j) == 0) continue;
                Integer q = D(k, j) / D(k, k);
                add_col(D, j, k, -q);
                add_col(V, j, k, -q);
                if (D(k, j) != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility of the trailing block
            std::size_t bad = r;
            for (std::size_t i = k + 1; i < r && bad == r; ++i)
                for (std::size_t j = k + 1; j < c; ++j)
                    if (D(i, j) % D(k, k) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == r) break;
            add_row(D, k, bad, Integer(1));
            add_row(U, k, bad, Integer(1));
        }
        if (D(k, k) < 0) {
            for (std::size_t j = 0; j < c; ++j) D(k, j) = -D(k, j);
            for (std::size_t j = 0; j < r; ++j) U(k, j) = -U(k, j);
        }
    }
done:
    SnfDecomposition s{U, D, V, {}};
    for (std::size_t k = 0; k < n; ++k) s.divisors.push_back(D(k, k));
    return s;
}

Integer cokernel_index(const IntMatrix& m)
{
    if (!m.is_square()) throw DomainError("cokernel index needs a square matrix");
    Integer d = determinant(m);
    if (d == 0) throw DomainError("infinite cokernel");
    return abs(d);
}

BetaMu derive_beta_mu(const IntMatrix& phi, const IntMatrix& B)
{
    if (!phi.is_square() || !B.is_square() || phi.rows != B.rows) throw DomainError("phi and B must be square of equal size");
    BetaMu r;
    r.beta = B.transpose();
    Integer det = determinant(r.beta);
    if (det == 0) throw DomainError("degenerate pairing");
    r.N = abs(det);
    RatMatrix mu = to_rat(phi) * inverse(to_rat(r.beta)).scaled(Rational(r.N));
    if (!is_integral(mu)) throw DomainError("internal: mu is not integral");
    r.mu = to_int(mu);
    return r;
}

std::vector<IntVec> coset_representatives(const IntMatrix& L)
{
    auto s = smith_normal_form(L);
    std::size_t n = L.rows;
    for (auto& d : s.divisors)
        if (d == 0) throw DomainError("infinite cokernel");
    RatMatrix Uinv = inverse(to_rat(s.U));
    std::vector<IntVec> reps;
    IntVec r(n, Integer(0));
    for (;;) {
        reps.push_back(to_int(Uinv.apply(to_rat(r))));
        std::size_t i = 0;
        while (i < n) {
            r[i] += 1;
            if (r[i] < s.divisors[i]) break;
            r[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    return reps;
}

RatVec reduce_mod_lattice(const RatMatrix& L, const RatMatrix& Linv, const RatVec& x)
{
    RatVec c = Linv.apply(x);
    RatVec f(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) f[i] = Rational(floor_q(c[i]));
    return sub(x, L.apply(f));
}

IntVec reduce_mod_lattice(const RatMatrix& L, const RatMatrix& Linv, const IntVec& x)
{
    return to_int(reduce_mod_lattice(L, Linv, to_rat(x)));
}

Saturation saturate(const std::vector<IntVec>& gens, std::size_t n)
{
    Saturation sat;
    if (gens.empty()) {
        sat.completion = IntMatrix::identity(n);
        return sat;
    }
    IntMatrix G = IntMatrix::from_columns(gens, n);
    auto s = smith_normal_form(G);
    std::size_t r = 0;
    for (auto& d : s.divisors)
        if (d != 0) ++r;
    sat.completion = to_int(inverse(to_rat(s.U)));
    for (std::size_t j = 0; j < r; ++j) sat.basis.push_back(sat.completion.col(j));
    return sat;
}

DefinitenessReport positive_definite(const RatMatrix& s)
{
    std::size_t n = s.rows;
    DefinitenessReport rep;
    RatMatrix a = s;
    RatMatrix L = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        Rational d = a(k, k);
        if (d <= 0) {
            // y = L^{-t} e_k gives y^t S y = d
            RatVec y(n, Rational(0));
            y[k] = 1;
            for (std::size_t jj = k; jj-- > 0;) {
                Rational acc = 0;
                for (std::size_t i = jj + 1; i <= k; ++i) acc += L(i, jj) * y[i];
                y[jj] = -acc;
            }
            rep.witness = primitive(y);
            RatVec yi = to_rat(rep.witness);
            rep.witness_value = dot(yi, s.apply(yi));
            return rep;
        }
        for (std::size_t i = k + 1; i < n; ++i) L(i, k) = a(i, k) / d;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= L(i, k) * a(k, j);
    }
    rep.positive_definite = true;
    return rep;
}

Rational certified_min_eigen_bound(const RatMatrix& s)
{
    std::size_t n = s.rows;
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = s(i, j).convert_to<double>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    double lam = es.eigenvalues().minCoeff();
    if (!(lam > 0)) throw DomainError("quadratic form is not positive definite");
    double guess = lam / 2;
    for (int attempt = 0; attempt < 64; ++attempt) {
        // round down to a dyadic rational
        long long scale = 1LL << 30;
        Rational cand(static_cast<long long>(std::floor(guess * static_cast<double>(scale))), scale);
        if (cand > 0) {
            RatMatrix t = s;
            for (std::size_t i = 0; i < n; ++i) t(i, i) -= cand;
            if (positive_definite(t).positive_definite) return cand;
        }
        guess /= 2;
    }
    throw DomainError("could not certify a positive eigenvalue bound");
}

}  // namespace degenkit
