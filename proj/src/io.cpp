#include "degenkit/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace degenkit {

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const RatVec& v)
{
    Json a = Json::array();
    for (auto& x : v) a.push_back(to_string(x));
    return a;
}

Json to_json(const Integer& n)
{
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
        return static_cast<long long>(n);
    return to_string(n);
}

Json to_json(const IntVec& v)
{
    Json a = Json::array();
    for (auto& x : v) a.push_back(to_json(x));
    return a;
}

Json to_json(const IntMatrix& m)
{
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows; ++i) a.push_back(to_json(m.row(i)));
    return a;
}

Rational rational_from_json(const Json& j)
{
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_unsigned()) return Rational(Integer(j.get<unsigned long long>()));
        if (j.is_number_integer()) return Rational(j.get<long long>());
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
    throw InputError("expected a rational (integer or \"p/q\" string), got " + j.dump());
}

RatVec ratvec_from_json(const Json& j)
{
    if (!j.is_array()) throw InputError("expected an array, got " + j.dump());
    RatVec v;
    for (auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

IntVec intvec_from_json(const Json& j)
{
    IntVec v;
    for (auto& q : ratvec_from_json(j)) {
        if (den(q) != 1) throw InputError("expected an integer, got " + to_string(q));
        v.push_back(num(q));
    }
    return v;
}

IntMatrix intmatrix_from_json(const Json& j)
{
    if (!j.is_array()) throw InputError("expected a matrix, got " + j.dump());
    std::vector<IntVec> rows;
    for (auto& r : j) rows.push_back(intvec_from_json(r));
    try {
        return IntMatrix::from_rows(rows);
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
}

RatVec parse_rational_list(const std::string& s)
{
    RatVec v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(parse_rational(item));
        } catch (const DomainError& e) {
            throw InputError(std::string("bad rational list: ") + e.what());
        }
    }
    if (v.empty()) throw InputError("empty rational list");
    return v;
}

namespace {

std::vector<int> signs_from_json(const Json& j)
{
    std::vector<int> s;
    if (!j.is_array()) throw InputError("expected a sign array");
    for (auto& x : j) {
        if (!x.is_number_integer()) throw InputError("signs must be integers");
        s.push_back(x.get<int>());
    }
    return s;
}

const Json& need(const Json& j, const char* key)
{
    if (!j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

DegenerationDatum datum_from_json(const Json& j)
{
    if (!j.is_object()) throw InputError("datum must be a JSON object");
    DegenerationDatum d;
    const Json& rank = need(j, "rank");
    if (!rank.is_number_integer() || rank.get<long long>() < 1) throw InputError("rank must be a positive integer");
    d.rank = rank.get<std::size_t>();
    d.phi = intmatrix_from_json(need(j, "phi"));
    const Json& tv = need(j, "tau_valuations");
    if (!tv.is_array()) throw InputError("tau_valuations must be a matrix");
    std::vector<RatVec> vals;
    for (auto& r : tv) vals.push_back(ratvec_from_json(r));
    std::vector<RatVec> units;
    if (j.contains("tau_units")) {
        for (auto& r : j.at("tau_units")) units.push_back(ratvec_from_json(r));
    }
    const std::size_t g = d.rank;
    if (d.phi.rows != g || d.phi.cols != g) throw InputError("phi must be " + std::to_string(g) + "x" + std::to_string(g));
    if (vals.size() != g) throw InputError("tau_valuations must have " + std::to_string(g) + " rows");
    if (!units.empty() && units.size() != g) throw InputError("tau_units must have " + std::to_string(g) + " rows");
    d.tau.assign(g, {});
    for (std::size_t i = 0; i < g; ++i) {
        if (vals[i].size() != g) throw InputError("tau_valuations row has wrong length");
        for (std::size_t k = 0; k < g; ++k) {
            ValuedScalar v = ValuedScalar::t_power(vals[i][k]);
            if (!units.empty()) {
                if (units[i].size() != g) throw InputError("tau_units row has wrong length");
                if (units[i][k] == 0) throw InputError("tau_units entries must be nonzero");
                v *= ValuedScalar::from_rational(units[i][k]);
            }
            d.tau[i].push_back(v);
        }
    }
    if (j.contains("psi_signs")) d.psi_signs = signs_from_json(j.at("psi_signs"));
    if (j.contains("chi_signs")) d.chi_signs = signs_from_json(j.at("chi_signs"));
    if (j.contains("abelian")) {
        const Json& a = j.at("abelian");
        if (a.contains("dim")) d.abelian.dim = a.at("dim").get<int>();
        if (a.contains("h0")) d.abelian.h0 = num(rational_from_json(a.at("h0")));
        if (d.abelian.dim < 0 || d.abelian.h0 < 1) throw InputError("abelian descriptor out of range");
    }
    if (j.contains("mu")) d.mu_override = intmatrix_from_json(j.at("mu"));
    if (j.contains("plain")) d.plain_normalization = j.at("plain").get<bool>();
    return d;
}

Json datum_to_json(const DegenerationDatum& d)
{
    Json j;
    j["rank"] = d.rank;
    j["phi"] = to_json(d.phi);
    Json tv = Json::array(), tu = Json::array();
    bool units = false;
    for (auto& row : d.tau) {
        Json vr = Json::array(), ur = Json::array();
        for (auto& v : row) {
            vr.push_back(to_string(v.t_exponent()));
            Rational u = v.unit_value();
            if (u != 1) units = true;
            ur.push_back(to_string(u));
        }
        tv.push_back(vr);
        tu.push_back(ur);
    }
    j["tau_valuations"] = tv;
    if (units) j["tau_units"] = tu;
    if (!d.psi_signs.empty()) j["psi_signs"] = d.psi_signs;
    if (!d.chi_signs.empty()) j["chi_signs"] = d.chi_signs;
    j["abelian"] = {{"dim", d.abelian.dim}, {"h0", to_json(d.abelian.h0)}};
    if (d.mu_override) j["mu"] = to_json(*d.mu_override);
    if (d.plain_normalization) j["plain"] = true;
    return j;
}

Json parse_json_text(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

Json polytope_to_json(const LatticePolytope& p)
{
    Json j;
    Json vs = Json::array();
    for (auto& v : p.vertices()) vs.push_back(to_json(v));
    j["vertices"] = vs;
    Json fs = Json::array();
    for (auto& f : p.facets()) fs.push_back({{"normal", to_json(f.normal)}, {"offset", to_string(f.offset)}});
    j["facets"] = fs;
    if (!p.equations().empty()) {
        Json es = Json::array();
        for (auto& f : p.equations()) es.push_back({{"normal", to_json(f.normal)}, {"offset", to_string(f.offset)}});
        j["equations"] = es;
    }
    return j;
}

LatticePolytope polytope_from_json(const Json& j, std::size_t ambient)
{
    std::vector<RatVec> pts;
    for (auto& v : need(j, "vertices")) pts.push_back(ratvec_from_json(v));
    for (auto& v : pts)
        if (v.size() != ambient) throw InputError("vertex has wrong length");
    auto p = LatticePolytope::from_points(pts, ambient);
    if (j.contains("facets")) {
        std::vector<Facet> fs;
        for (auto& f : j.at("facets")) fs.push_back({intvec_from_json(need(f, "normal")), rational_from_json(need(f, "offset"))});
        if (fs != p.facets()) throw InputError("facets do not match the vertices");
    }
    return p;
}

Json cone_to_json(const RationalCone& c)
{
    Json rays = Json::array(), lin = Json::array();
    for (auto& r : c.rays()) rays.push_back(to_json(r));
    for (auto& r : c.lineality()) lin.push_back(to_json(r));
    return {{"rays", rays}, {"lineality", lin}};
}

RationalCone cone_from_json(const Json& j, std::size_t ambient)
{
    std::vector<IntVec> gens;
    for (auto& r : need(j, "rays")) gens.push_back(intvec_from_json(r));
    if (j.contains("lineality"))
        for (auto& r : j.at("lineality")) {
            auto v = intvec_from_json(r);
            gens.push_back(v);
            gens.push_back(neg(v));
        }
    for (auto& g : gens)
        if (g.size() != ambient) throw InputError("cone generator has wrong length");
    return RationalCone::generated_by(gens, ambient);
}

Json fan_to_json(const Fan& f)
{
    Json cones = Json::array();
    for (auto& c : f.maximal) cones.push_back(cone_to_json(c));
    return {{"ambient", f.ambient}, {"cones", cones}};
}

Fan fan_from_json(const Json& j)
{
    std::size_t ambient = need(j, "ambient").get<std::size_t>();
    std::vector<RationalCone> cs;
    for (auto& c : need(j, "cones")) cs.push_back(cone_from_json(c, ambient));
    return Fan::from_cones(cs, ambient);
}

Json face_to_json(const ComplexFace& f)
{
    Json vs = Json::array();
    for (auto& v : f.vertices) vs.push_back(to_json(v));
    return {{"dim", f.dim}, {"vertices", vs}};
}

Json series_to_json(const FormalThetaSeries& s)
{
    Json terms = Json::array();
    for (auto& [w, c] : s.terms)
        terms.push_back({{"weight", to_json(w)}, {"coefficient", c.str()}, {"valuation", to_string(c.t_exponent())}});
    return {{"m", to_json(s.m)},       {"x", to_json(s.x)},           {"alpha", to_json(s.alpha)},
            {"u", to_json(s.u)},         {"cutoff", to_string(s.cutoff)}, {"terms", terms}};
}

double round15(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

Json complex_to_json(const Complex& z) { return Json::array({round15(z.real()), round15(z.imag())}); }

Complex complex_from_json(const Json& j)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw InputError("expected a complex number [re, im], got " + j.dump());
}

}  // namespace degenkit
