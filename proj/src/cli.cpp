#include "degenkit/cli.hpp"

#include "degenkit/cohomology.hpp"
#include "degenkit/fans.hpp"
#include "degenkit/heisenberg.hpp"
#include "degenkit/theta.hpp"
#include "degenkit/voronoi.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

namespace degenkit {

Json load_input(const std::string& src)
{
    auto p = src.find_first_not_of(" \t\r\n");
    if (p != std::string::npos && (src[p] == '{' || src[p] == '[')) return parse_json_text(src);
    return read_json_file(src);
}

namespace {

Json strings(const std::vector<std::string>& v)
{
    Json a = Json::array();
    for (auto& s : v) a.push_back(s);
    return a;
}

Json table_json(const ValuedTable& t)
{
    Json a = Json::array();
    for (auto& row : t) {
        Json r = Json::array();
        for (auto& v : row) r.push_back(v.str());
        a.push_back(r);
    }
    return a;
}

Json validation_json(const ValidationReport& r)
{
    Json checks = Json::array();
    for (auto& c : r.checks) {
        Json o = {{"name", c.name}, {"passed", c.passed}};
        if (!c.passed) o["message"] = c.message;
        checks.push_back(o);
    }
    return {{"valid", r.ok()}, {"checks", checks}};
}

Json extension_json(const DegenerationDatum& d)
{
    auto e = extend_to_dual(d);
    Json j;
    j["beta"] = to_json(e.bm.beta);
    j["N"] = to_json(e.bm.N);
    j["mu"] = to_json(e.bm.mu);
    j["tau_e"] = table_json(e.tau_e);
    j["e_zeta"] = to_json(e.e_zeta);
    j["radicals"] = strings(e.radicals);
    j["annotations"] = strings(e.annotations);
    j["chi"] = e.chi;
    auto x = extend_to_X(d);
    Json psi = Json::array();
    for (auto& v : x.psi_basis) psi.push_back(v.str());
    j["tau_ex"] = table_json(x.tau_ex);
    j["psi_ex_basis"] = psi;
    j["basis"] = to_json(x.basis);
    j["divisors"] = to_json(x.divisors);
    if (!x.annotations.empty()) j["ex_annotations"] = strings(x.annotations);
    return j;
}

Json polytope_section(const VoronoiForm& f)
{
    Json j;
    j["sigma0"] = polytope_to_json(f.sigma0());
    Json sk = Json::array();
    for (auto& level : skeleton(f.sigma0())) sk.push_back(level.size());
    j["skeleton_sizes"] = sk;
    return j;
}

Json strata_json(const Stratification& st)
{
    Json a = Json::array();
    for (auto& c : st.classes)
        a.push_back({{"class_id", c.id},
                     {"dim", c.dim},
                     {"is_component", c.is_component},
                     {"cut_polytope", polytope_to_json(c.cut)},
                     {"label", c.label}});
    return a;
}

Json ints(const std::vector<Integer>& v)
{
    Json a = Json::array();
    for (auto& x : v) a.push_back(to_json(x));
    return a;
}

Json basis_json(const ThetaSpace& sp, bool parallel, bool with_classes)
{
    auto bc = basis_count(sp, parallel);
    Json j = {{"count", to_json(bc.count)}, {"formula", to_json(bc.formula)}, {"enumerated", to_json(bc.enumerated)}};
    if (with_classes && bc.count <= 64) {
        Json cl = Json::array();
        for (auto& ix : theta_indices(sp))
            cl.push_back({{"x", to_json(ix.x)}, {"alpha", to_json(ix.alpha)}, {"u", to_json(ix.u)}});
        j["classes"] = cl;
    }
    return j;
}

DegenerationDatum load_datum(const std::string& src)
{
    if (src.empty()) throw InputError("--datum is required");
    return datum_from_json(load_input(src));
}

Cochain2 cochain_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("group") || !j.contains("table"))
        throw InputError("cochain must have \"group\" and \"table\"");
    std::vector<long> div;
    for (auto& n : j.at("group")) {
        if (!n.is_number_integer() || n.get<long>() < 1) throw InputError("group orders must be positive integers");
        div.push_back(n.get<long>());
    }
    FiniteAbelianGroup H(div);
    Cochain2 c = Cochain2::trivial(H);
    const Json& t = j.at("table");
    if (!t.is_array() || t.size() != H.size()) throw InputError("table must have |H| rows");
    for (std::size_t x = 0; x < H.size(); ++x) {
        if (!t[x].is_array() || t[x].size() != H.size()) throw InputError("table must have |H| columns");
        for (std::size_t y = 0; y < H.size(); ++y) {
            if (!t[x][y].is_string()) throw InputError("table entries must be strings");
            try {
                c.at(x, y) = ValuedScalar::parse(t[x][y].get<std::string>());
            } catch (const DomainError& e) {
                throw InputError(e.what());
            }
        }
    }
    if (j.contains("act")) {
        for (auto& s : j.at("act")) c.act.push_back(s.get<int>());
        if (c.act.size() != H.size()) throw InputError("act must have |H| entries");
    }
    return c;
}

Json cochain_table_json(const Cochain2& c)
{
    Json t = Json::array();
    for (std::size_t x = 0; x < c.H.size(); ++x) {
        Json r = Json::array();
        for (std::size_t y = 0; y < c.H.size(); ++y) r.push_back(c.at(x, y).str());
        t.push_back(r);
    }
    return t;
}

Json scalars(const std::vector<ValuedScalar>& v)
{
    Json a = Json::array();
    for (auto& x : v) a.push_back(x.str());
    return a;
}

Json cohomology_json(const Cochain2& c, bool parallel)
{
    Json j;
    j["group"] = c.H.divisors();
    auto cr = is_cocycle(c, parallel);
    j["cocycle"] = cr.cocycle;
    if (!cr.cocycle) {
        j["witness"] = cr.witness;
        return j;
    }
    auto cb = CoboundarySolver(c.H, c.act).solve(c);
    j["coboundary"] = cb.coboundary;
    if (cb.coboundary)
        j["psi"] = scalars(cb.psi);
    else
        j["reason"] = cb.reason;
    if (c.H.divisors().size() == 1 && c.act.empty()) {
        auto sr = splitting_requirements(c);
        j["omega"] = sr.a.str();
        j["splitting"] = {{"already_split", sr.already_split}, {"radical", sr.radical}, {"verified", sr.verified},
                          {"obstruction", sr.obstruction}};
    }
    return j;
}

Json heisenberg_json(const FiniteAbelianGroup& H, bool parallel)
{
    HeisenbergGroup G(H);
    auto r = heisenberg_checks(G, parallel);
    Json j;
    j["group"] = H.divisors();
    j["order"] = r.order;
    j["exponent"] = G.M();
    j["associative"] = r.associative;
    j["identity"] = r.identity;
    j["inverses"] = r.inverses;
    j["central"] = r.central;
    j["commutator_is_eH"] = r.commutator_is_eH;
    j["eH_bilinear"] = r.eH_bilinear;
    j["eH_alternating"] = r.eH_alternating;
    j["eH_nondegenerate"] = r.eH_nondegenerate;
    j["rho_homomorphism"] = r.rho_homomorphism;
    j["weight_one"] = r.weight_one;
    j["commutant_dim"] = r.commutant_dim;
    j["ok"] = r.ok();
    if (!r.failure.empty()) j["failure"] = r.failure;
    return j;
}

std::vector<long> longs(const Json& j, const char* what)
{
    std::vector<long> v;
    if (!j.is_array()) throw InputError(std::string(what) + " must be an integer array");
    for (auto& x : j) {
        if (!x.is_number_integer()) throw InputError(std::string(what) + " must be an integer array");
        v.push_back(x.get<long>());
    }
    return v;
}

std::vector<Complex> complexes(const Json& j)
{
    std::vector<Complex> v;
    if (!j.is_array()) throw InputError("z must be an array of complex numbers");
    for (auto& x : j) v.push_back(complex_from_json(x));
    return v;
}

Json complex_theta_json(const Json& in, long radius, bool parallel)
{
    if (!in.is_object() || !in.contains("W")) throw InputError("complex-theta input needs \"W\"");
    PeriodData p;
    for (auto& row : in.at("W")) {
        std::vector<Complex> r;
        for (auto& x : row) r.push_back(complex_from_json(x));
        p.W.push_back(r);
    }
    const std::size_t g = p.W.size();
    p.D = in.contains("D") ? longs(in.at("D"), "D") : std::vector<long>(g, 1);
    p.g1 = in.contains("g1") ? in.at("g1").get<std::size_t>() : g;
    if (p.D.size() != g || p.g1 > g) throw InputError("D or g1 does not match W");
    if (in.contains("radius")) radius = in.at("radius").get<long>();
    auto a = in.contains("a") ? longs(in.at("a"), "a") : std::vector<long>(g, 0);
    auto z = in.contains("z") ? complexes(in.at("z")) : std::vector<Complex>(g, 0.0);
    if (a.size() != g || z.size() != g) throw InputError("a and z must have length g");
    check_period(p);

    Json j;
    j["radius"] = radius;
    j["value"] = complex_to_json(complex_theta(p, a, z, radius, parallel));
    std::vector<long> e1(g, 0);
    e1[0] = 1;
    Json res;
    res["characteristic"] = round15(characteristic_residual(p, a, z, e1, e1, radius));
    res["periodicity"] = round15(periodicity_residual(p, z, e1, e1, radius));
    if (p.g1 > 0) {
        std::vector<long> r1(p.g1, 0), c1(p.g1, 0);
        c1[0] = 1;
        std::vector<Complex> z2(z.begin() + static_cast<long>(p.g1), z.end());
        res["sigma"] = round15(sigma_residual(p, r1, c1, z2, radius));
    }
    j["residuals"] = res;
    return j;
}

std::vector<long> parse_long_list(const std::string& s)
{
    std::vector<long> v;
    for (auto& q : parse_rational_list(s)) {
        if (den(q) != 1 || q < 1) throw InputError("expected positive integers, got " + s);
        v.push_back(to_ll(num(q)));
    }
    return v;
}

IntVec parse_int_list(const std::string& s)
{
    IntVec v;
    for (auto& q : parse_rational_list(s)) {
        if (den(q) != 1) throw InputError("expected integers, got " + s);
        v.push_back(num(q));
    }
    return v;
}

}  // namespace

Json report(const DegenerationDatum& d, const RunConfig& cfg)
{
    Json j;
    auto stage = [&](const char* name, auto&& body) {
        if (j.contains("failed_stage")) return;
        try {
            j[name] = body();
        } catch (const std::exception& e) {
            j[name] = {{"error", e.what()}};
            j["failed_stage"] = name;
        }
    };
    auto vr = validate(d);
    j["validation"] = validation_json(vr);
    if (!vr.ok()) {
        j["failed_stage"] = "validation";
        return j;
    }
    stage("extension", [&] { return extension_json(d); });
    auto kit = nefc_kit(d, 1);
    stage("polytope", [&] { return polytope_section(VoronoiForm::of_kit(kit, cfg.rank_cap)); });
    stage("strata", [&] {
        VoronoiForm f = VoronoiForm::of_kit(kit, cfg.rank_cap);
        auto st = stratification(f, kit.ext.bm.beta, d.abelian.dim);
        Json s;
        s["classes"] = strata_json(st);
        s["components"] = st.components();
        Json by = Json::array();
        for (auto c : st.counts_by_cell_dim()) by.push_back(c);
        s["classes_by_cell_dim"] = by;
        s["torus_cohomology"] = ints(torus_cell_cohomology(st, d.abelian.dim));
        return s;
    });
    stage("counts", [&] { return basis_json(theta_space(kit, 1, cfg.rank_cap), true, false); });
    return j;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"degenkit: degeneration data, Voronoi geometry, theta functions", "degenkit"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    std::string cutoff_text = "40";
    bool serial = false;
    app.add_option("--window", cfg.window, "window radius")->envname("DEGENKIT_WINDOW")->check(CLI::NonNegativeNumber);
    app.add_option("--cutoff", cutoff_text, "valuation cutoff p/q");
    app.add_option("--rank-cap", cfg.rank_cap, "largest rank accepted")->check(CLI::PositiveNumber);
    app.add_option("-o,--out", cfg.output, "write JSON here instead of stdout");
    app.add_flag("--serial", serial, "use the serial kernels");

    std::string l_text = "1", m_text = "1", cutlog, x_text, group_text, value_text, radius_text;
    long order = 0, n = 0, radius = 20;

    auto* validate_cmd = app.add_subcommand("validate", "check a degeneration datum");
    auto* extend_cmd = app.add_subcommand("extend", "extend tau and psi to the dual and to X");
    auto* polytope_cmd = app.add_subcommand("polytope", "Voronoi polytope Sigma(0)");
    auto* fan_cmd = app.add_subcommand("fan", "fan of the kit and of each face");
    auto* strata_cmd = app.add_subcommand("strata", "strata classes of the closed fiber");
    auto* specialize_cmd = app.add_subcommand("specialize", "stratum of a cutlog point");
    auto* basis_cmd = app.add_subcommand("theta-basis", "count theta functions");
    auto* build_cmd = app.add_subcommand("theta-build", "truncated theta series");
    auto* cohom_cmd = app.add_subcommand("cohomology", "cocycle and coboundary test of a cochain");
    auto* h2_cmd = app.add_subcommand("h2", "the cyclic cocycle Psi(a)");
    auto* heis_cmd = app.add_subcommand("heisenberg", "Heisenberg group checks");
    auto* ctheta_cmd = app.add_subcommand("complex-theta", "complex theta value and residuals");
    auto* report_cmd = app.add_subcommand("report", "full dossier of a datum");

    for (auto* c : {validate_cmd, extend_cmd, polytope_cmd, fan_cmd, strata_cmd, specialize_cmd, basis_cmd, build_cmd,
                    report_cmd})
        c->add_option("--datum", cfg.input, "datum path or inline JSON")->required();
    heis_cmd->add_option("--datum", cfg.input, "also check the standard basis of this datum");
    for (auto* c : {polytope_cmd, fan_cmd, strata_cmd, specialize_cmd, basis_cmd, build_cmd})
        c->add_option("--l", l_text, "level l");
    for (auto* c : {basis_cmd, build_cmd}) c->add_option("--m", m_text, "power m");
    specialize_cmd->add_option("--cutlog", cutlog, "p/q,p/q,...")->required();
    build_cmd->add_option("--x", x_text, "index x as a,b,...")->required();
    cohom_cmd->add_option("--cochain", cfg.input, "cochain path or inline JSON")->required();
    h2_cmd->add_option("--n", n, "cyclic order")->required()->check(CLI::PositiveNumber);
    h2_cmd->add_option("--value", value_text, "the scalar a")->required();
    auto* ord = heis_cmd->add_option("--order", order, "cyclic H of this order")->check(CLI::PositiveNumber);
    heis_cmd->add_option("--group", group_text, "H as n1,n2,...")->excludes(ord);
    ctheta_cmd->add_option("--input", cfg.input, "period data path or inline JSON")->required();
    ctheta_cmd->add_option("--radius", radius, "summation radius")->check(CLI::PositiveNumber);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }
    cfg.verb = app.get_subcommands().front()->get_name();
    const bool parallel = !serial;

    Json result;
    int status = kExitOk;
    try {
        cfg.cutoff = parse_rational(cutoff_text);
        auto level = [](const std::string& s, const char* what) {
            Rational q = parse_rational(s);
            if (den(q) != 1 || q < 1) throw InputError(std::string(what) + " must be a positive integer");
            return num(q);
        };
        const std::string& v = cfg.verb;
        if (v == "validate") {
            auto d = load_datum(cfg.input);
            auto r = validate(d);
            result = validation_json(r);
            if (!r.ok()) {
                err << r.first_failure() << "\n";
                status = kExitDomain;
            }
        } else if (v == "report") {
            result = report(load_datum(cfg.input), cfg);
            if (result.contains("failed_stage")) status = kExitDomain;
        } else if (v == "extend") {
            auto d = load_datum(cfg.input);
            require_valid(d);
            result = extension_json(d);
        } else if (v == "polytope" || v == "fan" || v == "strata" || v == "specialize") {
            auto d = load_datum(cfg.input);
            require_valid(d);
            auto kit = nefc_kit(d, level(l_text, "--l"));
            VoronoiForm f = VoronoiForm::of_kit(kit, cfg.rank_cap);
            if (v == "polytope") {
                result = polytope_section(f);
            } else if (v == "fan") {
                auto kf = fan_of_kit(f, cfg.window);
                result["fan"] = fan_to_json(kf.slice);
                result["proper"] = kf.check.proper;
                result["complete"] = kf.check.complete;
                if (!kf.check.defect.empty()) result["defect"] = kf.check.defect;
                result["tau_cones"] = kf.tau_cones.size();
                Json faces = Json::array();
                for (auto& F : f.faces_of_sigma0()) {
                    auto ff = fan_of_face(f, F);
                    faces.push_back({{"face", face_label(f, F)}, {"fan", fan_to_json(ff.fan)}, {"equal", ff.equal}});
                }
                result["faces"] = faces;
            } else if (v == "strata") {
                result = strata_json(stratification(f, kit.ext.bm.beta, d.abelian.dim));
            } else {
                auto c = parse_rational_list(cutlog);
                if (c.size() != d.rank) throw InputError("cutlog must have " + std::to_string(d.rank) + " entries");
                auto sp = specialize(f, c);
                result["stratum"] = sp.label;
                result["face"] = face_to_json(sp.delta);
                result["cut_polytope"] = polytope_to_json(sp.cut);
            }
        } else if (v == "theta-basis" || v == "theta-build") {
            auto d = load_datum(cfg.input);
            require_valid(d);
            auto kit = nefc_kit(d, level(l_text, "--l"));
            auto sp = theta_space(kit, level(m_text, "--m"), cfg.rank_cap);
            if (v == "theta-basis") {
                result = basis_json(sp, parallel, true);
            } else {
                auto x = parse_int_list(x_text);
                if (x.size() != d.rank) throw InputError("--x must have " + std::to_string(d.rank) + " entries");
                result = series_to_json(build_theta(sp, x, cfg.cutoff));
            }
        } else if (v == "cohomology") {
            result = cohomology_json(cochain_from_json(load_input(cfg.input)), parallel);
        } else if (v == "h2") {
            ValuedScalar a;
            try {
                a = ValuedScalar::parse(value_text);
            } catch (const DomainError& e) {
                throw InputError(e.what());
            }
            auto c = psi_cocycle(a, n);
            result["n"] = n;
            result["value"] = a.str();
            result["table"] = cochain_table_json(c);
            Json body = cohomology_json(c, parallel);
            for (auto& [k, val] : body.items())
                if (k != "group") result[k] = val;
            auto rc = aut_radical_cover(n, false);
            result["radical_cover"] = {{"order", rc.order}, {"cyclic", rc.cyclic}, {"structure", rc.structure}};
        } else if (v == "heisenberg") {
            std::vector<long> div = group_text.empty() ? std::vector<long>{order > 0 ? order : 2} : parse_long_list(group_text);
            result = heisenberg_json(FiniteAbelianGroup(div), parallel);
            if (!result["ok"].get<bool>()) status = kExitDomain;
            if (!cfg.input.empty()) {
                auto d = load_datum(cfg.input);
                require_valid(d);
                auto sb = standard_basis_check(d, cfg.cutoff);
                Json reps = Json::array();
                for (auto& r : sb.reps) reps.push_back(to_json(r));
                result["standard_basis"] = {{"h1", sb.h1},
                                            {"reps", reps},
                                            {"terms", sb.terms},
                                            {"translation_law", sb.translation_law},
                                            {"character_law", sb.character_law}};
                if (!sb.ok()) {
                    result["standard_basis"]["failure"] = sb.failure;
                    status = kExitDomain;
                }
            }
        } else if (v == "complex-theta") {
            result = complex_theta_json(load_input(cfg.input), radius, parallel);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitDomain;
    }

    std::string text = result.dump(2) + "\n";
    if (cfg.output.empty()) {
        out << text;
    } else {
        std::ofstream f(cfg.output);
        if (!f) {
            err << "error: cannot write " << cfg.output << "\n";
            return kExitUsage;
        }
        f << text;
    }
    return status;
}

}  // namespace degenkit
