#include "degenkit/cohomology.hpp"

#include <algorithm>
#include <numeric>

namespace degenkit {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<long> divisors) : div_(std::move(divisors))
{
    for (long d : div_) {
        if (d < 1) throw DomainError("group divisors must be positive");
        size_ *= static_cast<std::size_t>(d);
    }
    add_.resize(size_ * size_);
    for (std::size_t i = 0; i < size_; ++i) {
        auto a = element(i);
        for (std::size_t j = 0; j < size_; ++j) {
            auto b = element(j);
            for (std::size_t k = 0; k < a.size(); ++k) b[k] += a[k];
            add_[i * size_ + j] = index(b);
        }
    }
}

std::vector<long> FiniteAbelianGroup::canonical() const
{
    if (div_.empty()) return {};
    IntMatrix d(div_.size(), div_.size());
    for (std::size_t i = 0; i < div_.size(); ++i) d(i, i) = div_[i];
    std::vector<long> out;
    for (auto& x : smith_normal_form(d).divisors)
        if (abs(x) != 1) out.push_back(static_cast<long>(to_ll(abs(x))));
    return out;
}

long FiniteAbelianGroup::exponent() const
{
    long e = 1;
    for (long d : div_) e = std::lcm(e, d);
    return e;
}

std::vector<long> FiniteAbelianGroup::element(std::size_t i) const
{
    std::vector<long> x(div_.size());
    for (std::size_t k = 0; k < div_.size(); ++k) {
        x[k] = static_cast<long>(i % static_cast<std::size_t>(div_[k]));
        i /= static_cast<std::size_t>(div_[k]);
    }
    return x;
}

std::size_t FiniteAbelianGroup::index(const std::vector<long>& x) const
{
    if (x.size() != div_.size()) throw DomainError("element has wrong length");
    std::size_t i = 0;
    for (std::size_t k = div_.size(); k-- > 0;) {
        long r = ((x[k] % div_[k]) + div_[k]) % div_[k];
        i = i * static_cast<std::size_t>(div_[k]) + static_cast<std::size_t>(r);
    }
    return i;
}

std::size_t FiniteAbelianGroup::neg(std::size_t i) const
{
    auto x = element(i);
    for (auto& c : x) c = -c;
    return index(x);
}

Cochain2 Cochain2::trivial(const FiniteAbelianGroup& H)
{
    Cochain2 c;
    c.H = H;
    c.table.assign(H.size() * H.size(), ValuedScalar::one());
    return c;
}

bool Cochain2::normalized() const
{
    for (std::size_t x = 0; x < H.size(); ++x)
        if (at(x, 0) != ValuedScalar::one() || at(0, x) != ValuedScalar::one()) return false;
    return true;
}

namespace {

void check_action(const FiniteAbelianGroup& H, const ActionTable& act)
{
    if (act.empty()) return;
    if (act.size() != H.size()) throw DomainError("action table has wrong size");
    for (std::size_t x = 0; x < H.size(); ++x) {
        if (act[x] != 1 && act[x] != -1) throw DomainError("action values must be +1 or -1");
        for (std::size_t y = 0; y < H.size(); ++y)
            if (act[H.add(x, y)] != act[x] * act[y]) throw DomainError("action is not a homomorphism");
    }
}

std::string elem_string(const std::vector<long>& x)
{
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
    return s + ")";
}

int act_at(const ActionTable& act, std::size_t x) { return act.empty() ? 1 : act[x]; }

std::string coord_key(const Integer& p) { return p.str(); }

Rational coord_value(const ValuedScalar& v, const std::string& key)
{
    if (key == "t") return v.t_exponent();
    auto it = v.unit_part().find(Integer(key));
    return it == v.unit_part().end() ? Rational(0) : it->second;
}

}  // namespace

CocycleReport is_cocycle(const Cochain2& phi, bool parallel)
{
    CocycleReport r;
    check_action(phi.H, phi.act);
    if (!phi.normalized()) {
        r.cocycle = false;
        r.witness = "not normalized";
        return r;
    }
    const auto n = phi.H.size();
    auto f = parallel ? cocycle_triples_parallel(n, phi.H.add_table(), phi.table, phi.act)
                      : cocycle_triples_serial(n, phi.H.add_table(), phi.table, phi.act);
    if (f.found) {
        r.cocycle = false;
        r.witness = "x=" + std::to_string(f.x) + " y=" + std::to_string(f.y) + " z=" + std::to_string(f.z);
    }
    return r;
}

Cochain2 coboundary(const FiniteAbelianGroup& H, const std::vector<ValuedScalar>& psi, const ActionTable& act)
{
    if (psi.size() != H.size()) throw DomainError("1-cochain has wrong size");
    check_action(H, act);
    Cochain2 c;
    c.H = H;
    c.act = act;
    c.table.resize(H.size() * H.size());
    for (std::size_t x = 0; x < H.size(); ++x)
        for (std::size_t y = 0; y < H.size(); ++y) {
            ValuedScalar xy = act_at(act, x) < 0 ? psi[y].inverse() : psi[y];
            c.at(x, y) = psi[H.add(x, y)] / psi[x] / xy;
        }
    return c;
}

void widen(UnitAmbient& amb, const ValuedScalar& v)
{
    auto bump = [&](const std::string& k, const Rational& e) {
        Integer d = den(e);
        auto it = amb.find(k);
        if (it == amb.end()) {
            if (d != 1) amb[k] = d;
        } else {
            it->second = lcm(it->second, d);
        }
    };
    bump("t", v.t_exponent());
    for (auto& [p, e] : v.unit_part()) bump(coord_key(p), e);
}

UnitAmbient ambient_of(const std::vector<ValuedScalar>& values)
{
    UnitAmbient a;
    for (auto& v : values) widen(a, v);
    return a;
}

CoboundarySolver::CoboundarySolver(FiniteAbelianGroup H, ActionTable act) : H_(std::move(H)), act_(std::move(act))
{
    check_action(H_, act_);
    const std::size_t n = H_.size();
    A_ = IntMatrix(n * n, n > 0 ? n - 1 : 0);
    A2_.assign(n * n, std::vector<int>(n > 0 ? n - 1 : 0, 0));
    // phi(x,y) = psi(x+y) - psi(x) - act(x) psi(y), psi(0) = 0
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::size_t row = x * n + y;
            std::size_t s = H_.add(x, y);
            if (s > 0) A_(row, s - 1) += 1;
            if (x > 0) A_(row, x - 1) -= 1;
            if (y > 0) A_(row, y - 1) -= act_at(act_, x);
        }
    for (std::size_t i = 0; i < A_.rows; ++i)
        for (std::size_t j = 0; j < A_.cols; ++j) A2_[i][j] = static_cast<int>(to_ll(abs(A_(i, j))) % 2);
    snf_ = smith_normal_form(A_);
    for (auto& d : snf_.divisors)
        if (d != 0) ++rank_;
}

CoboundaryResult CoboundarySolver::solve(const Cochain2& phi) const
{
    return solve(phi, ambient_of(phi.table));
}

CoboundaryResult CoboundarySolver::solve(const Cochain2& phi, const UnitAmbient& amb) const
{
    CoboundaryResult res;
    const std::size_t n = H_.size();
    if (phi.H.divisors() != H_.divisors() || phi.act != act_) throw DomainError("cochain does not match the solver");
    if (!phi.normalized()) {
        res.reason = "not normalized";
        return res;
    }
    std::vector<std::string> keys{"t"};
    for (auto& v : phi.table)
        for (auto& [p, e] : v.unit_part()) {
            std::string k = coord_key(p);
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
        }
    std::vector<int> signs(n, 0);
    std::vector<std::map<Integer, Rational>> units(n);
    std::vector<Rational> texp(n, 0);

    for (auto& key : keys) {
        auto it = amb.find(key);
        Integer d = it == amb.end() ? Integer(1) : it->second;
        IntVec b(n * n);
        for (std::size_t r = 0; r < n * n; ++r) {
            Rational v = coord_value(phi.table[r], key) * Rational(d);
            if (den(v) != 1) {
                res.reason = "value outside the ambient lattice at coordinate " + key;
                return res;
            }
            b[r] = num(v);
        }
        // U A V = D: D z = U b, psi = V z
        IntVec ub = snf_.U.apply(b);
        IntVec z(A_.cols, Integer(0));
        for (std::size_t i = 0; i < ub.size(); ++i) {
            Integer di = i < snf_.divisors.size() ? snf_.divisors[i] : Integer(0);
            if (di == 0) {
                if (ub[i] != 0) {
                    res.reason = "exponent system infeasible at coordinate " + key;
                    return res;
                }
            } else {
                if (ub[i] % di != 0) {
                    res.reason = "exponent system infeasible at coordinate " + key;
                    return res;
                }
                z[i] = ub[i] / di;
            }
        }
        IntVec x = snf_.V.apply(z);
        for (std::size_t k = 1; k < n; ++k) {
            Rational e(x[k - 1], d);
            if (key == "t")
                texp[k] = e;
            else if (e != 0)
                units[k][Integer(key)] = e;
        }
    }

    // signs over GF(2)
    {
        const std::size_t m = n * n, c = A_.cols;
        std::vector<std::vector<int>> aug(m, std::vector<int>(c + 1));
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t j = 0; j < c; ++j) aug[r][j] = A2_[r][j];
            aug[r][c] = phi.table[r].sign() < 0 ? 1 : 0;
        }
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t j = 0; j < c && row < m; ++j) {
            std::size_t p = row;
            while (p < m && aug[p][j] == 0) ++p;
            if (p == m) continue;
            std::swap(aug[p], aug[row]);
            for (std::size_t r = 0; r < m; ++r)
                if (r != row && aug[r][j])
                    for (std::size_t k = j; k <= c; ++k) aug[r][k] ^= aug[row][k];
            pivots.push_back(j);
            ++row;
        }
        for (std::size_t r = row; r < m; ++r)
            if (aug[r][c]) {
                res.reason = "sign system infeasible";
                return res;
            }
        for (std::size_t i = 0; i < pivots.size(); ++i) signs[pivots[i] + 1] = aug[i][c];
    }

    res.psi.resize(n);
    for (std::size_t k = 0; k < n; ++k) res.psi[k] = ValuedScalar(signs[k] ? -1 : 1, units[k], texp[k]);
    if (!(coboundary(H_, res.psi, act_) == phi)) throw DomainError("internal: coboundary witness does not reproduce");
    res.coboundary = true;
    return res;
}

CoboundaryResult is_coboundary(const Cochain2& phi) { return CoboundarySolver(phi.H, phi.act).solve(phi); }

namespace {

long cyclic_order(const Cochain2& phi)
{
    if (phi.H.divisors().size() != 1) throw DomainError("group is not presented as cyclic");
    return phi.H.divisors()[0];
}

}  // namespace

ValuedScalar omega(const Cochain2& phi)
{
    long n = cyclic_order(phi);
    std::size_t h = n > 1 ? 1 : 0;
    ValuedScalar r = ValuedScalar::one();
    for (long v = 0; v < n; ++v) r *= phi.at(static_cast<std::size_t>(v) % static_cast<std::size_t>(n), h);
    return r;
}

Cochain2 psi_cocycle(const ValuedScalar& x, long n)
{
    Cochain2 c = Cochain2::trivial(FiniteAbelianGroup::cyclic(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            if (i + j >= n) c.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = x;
    return c;
}

SplittingRequirement splitting_requirements(const Cochain2& phi)
{
    SplittingRequirement s;
    s.n = cyclic_order(phi);
    for (int a : phi.act)
        if (a != 1) throw DomainError("splitting needs the trivial action");
    s.a = omega(phi);
    CoboundarySolver solver(phi.H);
    UnitAmbient amb = ambient_of(phi.table);
    if (solver.solve(phi, amb).coboundary) {
        s.already_split = true;
        s.verified = true;
        return s;
    }
    ValuedScalar root;
    try {
        root = vs_root(s.a, s.n);
    } catch (const DomainError&) {
        s.obstruction = "requires root of unity of order " + std::to_string(2 * s.n);
        return s;
    }
    s.radical = "(" + s.a.str() + ")^(1/" + std::to_string(s.n) + ")";
    widen(amb, root);
    s.verified = solver.solve(phi, amb).coboundary;
    return s;
}

ValuedScalar commutator_value(const Cochain2& phi, std::size_t x, std::size_t y) { return phi.at(x, y) / phi.at(y, x); }

SymmetricSplit symmetric_decompose(const Cochain2& phi, std::size_t k)
{
    const auto& div = phi.H.divisors();
    if (k > div.size()) throw DomainError("split index exceeds the number of factors");
    for (std::size_t x = 0; x < phi.H.size(); ++x)
        for (std::size_t y = 0; y < x; ++y)
            if (commutator_value(phi, x, y) != ValuedScalar::one())
                throw DomainError("cochain is not symmetric at (" + elem_string(phi.H.element(x)) + ", " +
                                  elem_string(phi.H.element(y)) + ")");
    FiniteAbelianGroup H1(std::vector<long>(div.begin(), div.begin() + static_cast<long>(k)));
    FiniteAbelianGroup H2(std::vector<long>(div.begin() + static_cast<long>(k), div.end()));
    auto embed = [&](const std::vector<long>& a, const std::vector<long>& b) {
        std::vector<long> e = a;
        e.insert(e.end(), b.begin(), b.end());
        return phi.H.index(e);
    };
    std::vector<long> z1(k, 0), z2(div.size() - k, 0);
    SymmetricSplit out;
    out.phi1 = Cochain2::trivial(H1);
    out.phi2 = Cochain2::trivial(H2);
    for (std::size_t x = 0; x < H1.size(); ++x)
        for (std::size_t y = 0; y < H1.size(); ++y)
            out.phi1.at(x, y) = phi.at(embed(H1.element(x), z2), embed(H1.element(y), z2));
    for (std::size_t x = 0; x < H2.size(); ++x)
        for (std::size_t y = 0; y < H2.size(); ++y)
            out.phi2.at(x, y) = phi.at(embed(z1, H2.element(x)), embed(z1, H2.element(y)));
    Cochain2 q = phi;
    for (std::size_t x = 0; x < phi.H.size(); ++x)
        for (std::size_t y = 0; y < phi.H.size(); ++y) {
            auto ex = phi.H.element(x), ey = phi.H.element(y);
            std::vector<long> x1(ex.begin(), ex.begin() + static_cast<long>(k)), x2(ex.begin() + static_cast<long>(k), ex.end());
            std::vector<long> y1(ey.begin(), ey.begin() + static_cast<long>(k)), y2(ey.begin() + static_cast<long>(k), ey.end());
            q.at(x, y) = phi.at(x, y) / (out.phi1.at(H1.index(x1), H1.index(y1)) * out.phi2.at(H2.index(x2), H2.index(y2)));
        }
    auto r = is_coboundary(q);
    out.cohomologous = r.coboundary;
    out.psi = r.psi;
    return out;
}

RadicalCover aut_radical_cover(long n, bool base_contains_mu_n)
{
    if (n < 1) throw DomainError("n must be positive");
    RadicalCover c;
    long units = 0;
    for (long i = 1; i <= n; ++i)
        if (std::gcd(i, n) == 1) ++units;
    if (base_contains_mu_n || units == 1) {
        c.order = n;
        c.cyclic = true;
        c.structure = n == 1 ? "trivial" : "Z/" + std::to_string(n);
    } else {
        c.order = n * units;
        c.cyclic = false;
        c.structure = "Z/" + std::to_string(n) + " x| (Z/" + std::to_string(n) + ")^x";
    }
    return c;
}

}  // namespace degenkit
