#include "degenkit/datum.hpp"

#include <functional>
#include <set>

namespace degenkit {

namespace {

ValuedScalar bilinear(const ValuedTable& t, const IntVec& a, const IntVec& b)
{
    ValuedScalar r;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            Integer e = a[i] * b[j];
            if (e != 0) r *= t[i][j].pow(e);
        }
    }
    return r;
}

IntVec unit_vec(std::size_t n, std::size_t i)
{
    IntVec e(n, Integer(0));
    e[i] = 1;
    return e;
}

void note_radicals(const ValuedScalar& v, std::set<std::string>& out)
{
    for (auto& [p, e] : v.unit_part())
        if (den(e) != 1) out.insert(p.str() + "^(1/" + den(e).str() + ")");
}

}  // namespace

ValuedScalar DegenerationDatum::tau_at(const IntVec& y, const IntVec& x) const { return bilinear(tau, y, x); }

IntVec DegenerationDatum::phi_of(const IntVec& y) const { return to_int(mat_apply(to_rat(phi), to_rat(y))); }

ValuedScalar DegenerationDatum::psi_at(const IntVec& y) const
{
    ValuedScalar r;
    for (std::size_t i = 0; i < rank; ++i) {
        if (y[i] == 0) continue;
        IntVec e = unit_vec(rank, i);
        ValuedScalar base = vs_root(tau_at(e, phi_of(e)), 2);
        int s = psi_signs.empty() ? 1 : psi_signs[i];
        r *= base.with_sign(s).pow(y[i] * y[i]);
    }
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = i + 1; j < rank; ++j) {
            Integer e = y[i] * y[j];
            if (e != 0) r *= tau_at(unit_vec(rank, i), phi_of(unit_vec(rank, j))).pow(e);
        }
    return r;
}

IntMatrix DegenerationDatum::valuation_matrix() const
{
    IntMatrix B(rank, rank);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < rank; ++j) {
            const Rational& v = tau[i][j].t_exponent();
            if (den(v) != 1) throw DomainError("tau valuations must be integers");
            B(i, j) = num(v);
        }
    return B;
}

DegenerationDatum make_datum(const IntMatrix& phi, const IntMatrix& B)
{
    DegenerationDatum d;
    d.rank = phi.rows;
    d.phi = phi;
    d.tau.assign(d.rank, std::vector<ValuedScalar>(d.rank));
    for (std::size_t i = 0; i < d.rank; ++i)
        for (std::size_t j = 0; j < d.rank; ++j) d.tau[i][j] = ValuedScalar::t_power(Rational(B(i, j)));
    d.psi_signs.assign(d.rank, 1);
    return d;
}

bool ValidationReport::ok() const
{
    for (auto& c : checks)
        if (!c.passed) return false;
    return true;
}

std::string ValidationReport::first_failure() const
{
    for (auto& c : checks)
        if (!c.passed) return c.message;
    return {};
}

ValidationReport validate(const DegenerationDatum& d)
{
    ValidationReport rep;
    const std::size_t g = d.rank;
    auto run = [&](const std::string& name, const std::function<std::string()>& body) {
        ValidationCheck c{name, true, ""};
        try {
            std::string msg = body();
            if (!msg.empty()) {
                c.passed = false;
                c.message = msg;
            }
        } catch (const DomainError& e) {
            c.passed = false;
            c.message = e.what();
        }
        rep.checks.push_back(c);
        return c.passed;
    };

    bool shape = run("shape", [&]() -> std::string {
        if (g == 0) return "rank must be positive";
        if (d.phi.rows != g || d.phi.cols != g) return "phi must be " + std::to_string(g) + "x" + std::to_string(g);
        if (d.tau.size() != g) return "tau table has wrong size";
        for (auto& r : d.tau)
            if (r.size() != g) return "tau table has wrong size";
        if (!d.psi_signs.empty() && d.psi_signs.size() != g) return "psi_signs must have length " + std::to_string(g);
        if (!d.chi_signs.empty() && d.chi_signs.size() != g) return "chi_signs must have length " + std::to_string(g);
        return {};
    });
    if (!shape) return rep;

    bool inj = run("phi_injective", [&]() -> std::string {
        return determinant(d.phi) == 0 ? "phi is not injective (det = 0)" : "";
    });
    bool integral = run("integral_valuations", [&]() -> std::string {
        d.valuation_matrix();
        return {};
    });
    bool sym = run("symmetry", [&]() -> std::string {
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = i + 1; j < g; ++j) {
                IntVec yi = unit_vec(g, i), yj = unit_vec(g, j);
                if (d.tau_at(yi, d.phi_of(yj)) != d.tau_at(yj, d.phi_of(yi)))
                    return "symmetry fails at (y" + std::to_string(i + 1) + ",y" + std::to_string(j + 1) + ")";
            }
        return {};
    });
    bool pos = false;
    if (integral && sym) {
        pos = run("positivity", [&]() -> std::string {
            RatMatrix S = to_rat(d.valuation_matrix() * d.phi);
            RatMatrix Ss = S;
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j < g; ++j) Ss(i, j) = (S(i, j) + S(j, i)) / 2;
            auto r = positive_definite(Ss);
            if (!r.positive_definite) return "positivity fails at y=" + vec_string(r.witness);
            return {};
        });
    } else {
        rep.checks.push_back({"positivity", false, "positivity not checked (needs integral symmetric valuations)"});
    }
    run("symmetric_normalization", [&]() -> std::string {
        for (std::size_t i = 0; i < g; ++i) {
            IntVec e = unit_vec(g, i);
            if (d.tau_at(e, d.phi_of(e)).sign() < 0)
                return "symmetric normalization needs a square root of a negative value at y" + std::to_string(i + 1);
        }
        IntVec y(g, Integer(-2));
        for (;;) {
            ValuedScalar p = d.psi_at(y);
            if (p * p != d.tau_at(y, d.phi_of(y)))
                return "psi(y)^2 != tau(y,phi(y)) at y=" + vec_string(y);
            if (p != d.psi_at(neg(y))) return "psi(-y) != psi(y) at y=" + vec_string(y);
            std::size_t k = 0;
            while (k < g && y[k] == 2) y[k++] = -2;
            if (k == g) break;
            y[k] += 1;
        }
        return {};
    });
    run("abelian", [&]() -> std::string {
        if (d.abelian.dim < 0) return "abelian dimension must be nonnegative";
        if (d.abelian.h0 < 1) return "h0 must be positive";
        if (d.abelian.dim == 0 && d.abelian.h0 != 1) return "h0 must be 1 when the abelian part is zero";
        return {};
    });
    if (d.mu_override) {
        run("mu_override", [&]() -> std::string {
            const IntMatrix& m = *d.mu_override;
            if (m.rows != g || m.cols != g) return "mu must be " + std::to_string(g) + "x" + std::to_string(g);
            if (m != m.transpose()) return "mu must be symmetric";
            if (!positive_definite(to_rat(m)).positive_definite) return "mu must be positive definite";
            return {};
        });
    }
    if (!d.chi_signs.empty() && inj && integral && pos) {
        run("chi", [&]() -> std::string {
            for (int s : d.chi_signs)
                if (s != 1 && s != -1) return "chi_signs entries must be +1 or -1";
            IntMatrix beta = d.valuation_matrix().transpose();
            for (std::size_t i = 0; i < g; ++i) {
                int v = 1;
                for (std::size_t k = 0; k < g; ++k)
                    if (d.chi_signs[k] < 0 && beta(k, i) % 2 != 0) v = -v;
                if (v != 1) return "chi is not trivial on beta(y" + std::to_string(i + 1) + ")";
            }
            return {};
        });
    }
    return rep;
}

void require_valid(const DegenerationDatum& d)
{
    auto r = validate(d);
    if (!r.ok()) throw DomainError(r.first_failure());
}

ValuedScalar ExtendedDatum::tau_e_at(const IntVec& u, const IntVec& x) const { return bilinear(tau_e, u, x); }

IntVec ExtendedDatum::beta_of(const IntVec& y) const { return to_int(mat_apply(to_rat(bm.beta), to_rat(y))); }

IntVec ExtendedDatum::mu_of(const IntVec& u) const { return to_int(mat_apply(to_rat(bm.mu), to_rat(u))); }

int ExtendedDatum::chi_at(const IntVec& u) const
{
    int v = 1;
    for (std::size_t k = 0; k < chi.size(); ++k)
        if (chi[k] < 0 && u[k] % 2 != 0) v = -v;
    return v;
}

ValuedScalar ExtendedDatum::psi_e(const IntVec& u) const
{
    ValuedScalar r = tau_e_at(u, mu_of(u));
    return chi_at(u) < 0 ? r.with_sign(-r.sign()) : r;
}

ExtendedDatum extend_to_dual(const DegenerationDatum& d)
{
    require_valid(d);
    const std::size_t g = d.rank;
    ExtendedDatum ex;
    ex.base = d;
    ex.bm = derive_beta_mu(d.phi, d.valuation_matrix());
    ex.chi = d.chi_signs.empty() ? std::vector<int>(g, 1) : d.chi_signs;

    auto snf = smith_normal_form(ex.bm.beta);
    std::set<std::string> radicals;
    // roots[k][j] = tau^e(u_k, x_j) with beta(y'_k) = d_k u_k
    ValuedTable roots(g, std::vector<ValuedScalar>(g));
    for (std::size_t k = 0; k < g; ++k) {
        IntVec yk = snf.V.col(k);
        const Integer& dk = snf.divisors[k];
        for (std::size_t j = 0; j < g; ++j) {
            ValuedScalar v = d.tau_at(yk, unit_vec(g, j));
            if (v.sign() < 0 && dk % 2 == 0) {
                ex.annotations.push_back("zeta-twist: tau^e(u" + std::to_string(k + 1) + ",x" + std::to_string(j + 1) +
                                         ") needs a root of unity of order " + Integer(2 * dk).str());
                v = v.with_sign(1);
            }
            roots[k][j] = vs_root(v, dk);
            note_radicals(roots[k][j], radicals);
        }
    }
    ex.tau_e.assign(g, std::vector<ValuedScalar>(g));
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            ValuedScalar r;
            for (std::size_t k = 0; k < g; ++k)
                if (snf.U(k, i) != 0) r *= roots[k][j].pow(snf.U(k, i));
            ex.tau_e[i][j] = r;
        }
    Integer ez = 1;
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) ez = lcm(ez, den(ex.tau_e[i][j].t_exponent()));
        ez = lcm(ez, den(ex.psi_e(unit_vec(g, i)).t_exponent()));
    }
    ex.e_zeta = ez;
    ex.radicals.assign(radicals.begin(), radicals.end());
    return ex;
}

ValuedScalar FullExtension::tau_at(const IntVec& x, const IntVec& z) const { return bilinear(tau_ex, x, z); }

ValuedScalar FullExtension::psi_at(const IntVec& x) const
{
    IntVec a = to_int(mat_apply(to_rat(basis_inv), to_rat(x)));
    ValuedScalar r;
    std::size_t g = rank;
    // tau in the x' basis
    auto tb = [&](std::size_t s, std::size_t q) { return tau_at(basis.col(s), basis.col(q)); };
    for (std::size_t s = 0; s < g; ++s)
        if (a[s] != 0) r *= psi_basis[s].pow(a[s] * a[s]);
    for (std::size_t s = 0; s < g; ++s)
        for (std::size_t q = s + 1; q < g; ++q) {
            Integer e = a[s] * a[q];
            if (e != 0) r *= tb(s, q).pow(e);
        }
    return r;
}

FullExtension extend_to_X(const DegenerationDatum& d)
{
    require_valid(d);
    const std::size_t g = d.rank;
    FullExtension fx;
    fx.rank = g;
    auto snf = smith_normal_form(d.phi);
    fx.basis = to_int(inverse(to_rat(snf.U)));
    fx.basis_inv = snf.U;
    fx.divisors = snf.divisors;

    auto root_of = [&](ValuedScalar v, const Integer& e, const std::string& what) {
        if (v.sign() < 0 && e % 2 == 0) {
            fx.annotations.push_back("sign of " + what + " fixed to + (needs a root of unity of order " + Integer(2 * e).str() + ")");
            v = v.with_sign(1);
        }
        return vs_root(v, e);
    };

    // T[s][q] = tau^ex(x'_s, x'_q)
    ValuedTable T(g, std::vector<ValuedScalar>(g));
    for (std::size_t s = 0; s < g; ++s) {
        IntVec ys = snf.V.col(s);
        for (std::size_t q = s; q < g; ++q)
            T[s][q] = root_of(d.tau_at(ys, fx.basis.col(q)), snf.divisors[s],
                              "tau^ex(x'" + std::to_string(s + 1) + ",x'" + std::to_string(q + 1) + ")");
        for (std::size_t q = 0; q < s; ++q) {
            T[s][q] = T[q][s];
            ValuedScalar other = root_of(d.tau_at(ys, fx.basis.col(q)), snf.divisors[s], "tau^ex");
            if (other.with_sign(1) != T[s][q].with_sign(1)) throw DomainError("tau extension to X is not symmetric");
        }
    }
    fx.tau_ex.assign(g, std::vector<ValuedScalar>(g));
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            ValuedScalar r;
            for (std::size_t s = 0; s < g; ++s)
                for (std::size_t q = 0; q < g; ++q) {
                    Integer e = snf.U(s, i) * snf.U(q, j);
                    if (e != 0) r *= T[s][q].pow(e);
                }
            fx.tau_ex[i][j] = r;
        }
    for (std::size_t s = 0; s < g; ++s) {
        const Integer& es = snf.divisors[s];
        ValuedScalar sq = T[s][s];
        if (sq.sign() < 0) {
            fx.annotations.push_back("psi^ex(x'" + std::to_string(s + 1) + ") needs a square root of a negative value");
            sq = sq.with_sign(1);
        }
        ValuedScalar r = vs_root(sq, 2);
        int target = d.psi_at(snf.V.col(s)).sign();
        if (es % 2 != 0) {
            r = r.with_sign(target);
        } else if (target < 0) {
            fx.annotations.push_back("sign of psi^ex(x'" + std::to_string(s + 1) + ") fixed to + (needs a root of unity of order " +
                                     Integer(2 * es * es).str() + ")");
        }
        fx.psi_basis.push_back(r);
    }
    return fx;
}

ValuedScalar NefcKit::eps(const IntVec& u) const { return ext.psi_e(u).pow(2 * N() * l); }

Integer NefcKit::E(const IntVec& u) const { return 2 * N() * l * dot(u, ext.mu_of(u)); }

RatMatrix NefcKit::form() const
{
    const DegenerationDatum& b = ext.base;
    if (b.plain_normalization) return to_rat(b.mu_override ? *b.mu_override : ext.bm.mu).scaled(Rational(l));
    return to_rat(ext.bm.mu).scaled(Rational(4 * N() * l));
}

RatMatrix NefcKit::form_at_level(const Integer& m) const { return to_rat(ext.bm.mu).scaled(Rational(4 * N() * l * m)); }

NefcKit nefc_kit(const DegenerationDatum& d, const Integer& l)
{
    if (l < 1) throw DomainError("level l must be positive");
    NefcKit k;
    k.ext = extend_to_dual(d);
    k.l = l;
    return k;
}

DegenerationDatum power_datum(const DegenerationDatum& d, const Integer& m)
{
    if (m < 1) throw DomainError("power m must be positive");
    DegenerationDatum r = d;
    r.phi = d.phi.scaled(m);
    if (!d.psi_signs.empty())
        for (auto& s : r.psi_signs) s = (s < 0 && m % 2 != 0) ? -1 : 1;
    if (d.mu_override) r.mu_override = d.mu_override->scaled(m);
    return r;
}

}  // namespace degenkit
