#include "support.hpp"

#include "degenkit/cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace degenkit;
using namespace testkit;

namespace {

std::string data(const std::string& name) { return std::string(DEGENKIT_DATA_DIR) + "/" + name; }

struct Run {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("the three documented invocations")
    {
        auto sp = run({"specialize", "--datum", data("hex.json"), "--cutlog", "-1/2,0"});
        REQUIRE(sp.code == kExitOk);
        CHECK(sp.json()["stratum"] == "edge[m1,-m3]");

        auto tb = run({"theta-basis", "--datum", data("g1.json"), "--m", "1"});
        REQUIRE(tb.code == kExitOk);
        CHECK(tb.json()["count"] == 4);

        auto bad = run({"validate", "--datum", data("bad.json")});
        CHECK(bad.code == kExitDomain);
        CHECK(bad.err.find("positivity fails at y=(1)") != std::string::npos);
    }

    TEST_CASE("usage errors exit 2")
    {
        CHECK(run({}).code == kExitUsage);
        CHECK(run({"frobnicate"}).code == kExitUsage);
        CHECK(run({"validate"}).code == kExitUsage);
        CHECK(run({"specialize", "--datum", data("hex.json")}).code == kExitUsage);
        CHECK(run({"--window", "-1", "fan", "--datum", data("hex.json")}).code == kExitUsage);
        auto mal = run({"validate", "--datum", "{\"rank\": 1, \"phi\": [[1]"});
        CHECK(mal.code == kExitUsage);
        CHECK(mal.err.find("malformed JSON at byte") != std::string::npos);
        auto schema = run({"validate", "--datum", "{\"rank\": 1}"});
        CHECK(schema.code == kExitUsage);
        CHECK(schema.err.find("missing field \"phi\"") != std::string::npos);
        CHECK(run({"validate", "--datum", data("no_such_file.json")}).code == kExitUsage);
        CHECK(run({"specialize", "--datum", data("hex.json"), "--cutlog", "1/0,0"}).code == kExitUsage);
        CHECK(run({"specialize", "--datum", data("hex.json"), "--cutlog", "0"}).code == kExitUsage);
        CHECK(run({"theta-basis", "--datum", data("g1.json"), "--m", "0"}).code == kExitUsage);
    }

    TEST_CASE("domain errors exit 1 with the module message")
    {
        auto h = run({"heisenberg", "--order", "9"});
        CHECK(h.code == kExitDomain);
        CHECK(h.err.find("exceeds the cap") != std::string::npos);
        auto ct = run({"complex-theta", "--input", R"({"W": [[[0, -1]]]})"});
        CHECK(ct.code == kExitDomain);
        CHECK(ct.err.find("not positive definite") != std::string::npos);
        CHECK(run({"extend", "--datum", data("bad.json")}).code == kExitDomain);
        auto tb = run({"theta-build", "--datum", data("g1.json"), "--x", "0", "--cutoff", "0"});
        CHECK(tb.code == kExitOk);
        CHECK(tb.json()["terms"].empty());
    }

    TEST_CASE("determinism and serial agreement")
    {
        for (auto verb : {"report", "fan", "strata", "extend"}) {
            auto a = run({verb, "--datum", data("hex.json")});
            auto b = run({verb, "--datum", data("hex.json")});
            auto c = run({"--serial", verb, "--datum", data("hex.json")});
            CHECK(a.code == kExitOk);
            CHECK(a.out == b.out);
            CHECK(a.out == c.out);
        }
        auto t1 = run({"theta-basis", "--datum", data("phi2.json")});
        auto t2 = run({"--serial", "theta-basis", "--datum", data("phi2.json")});
        CHECK(t1.out == t2.out);
        CHECK(t1.json()["count"] == 32);
    }

    TEST_CASE("polytope and fan JSON round trip")
    {
        for (auto name : {"hex.json", "g1.json", "two_id.json"}) {
            auto p = run({"polytope", "--datum", data(name)});
            REQUIRE(p.code == kExitOk);
            auto d = datum_from_json(read_json_file(data(name)));
            VoronoiForm f = VoronoiForm::of_kit(nefc_kit(d, 1));
            auto back = polytope_from_json(p.json()["sigma0"], d.rank);
            CHECK(back == f.sigma0());
            CHECK(polytope_to_json(back).dump() == p.json()["sigma0"].dump());

            auto fj = run({"fan", "--datum", data(name)});
            REQUIRE(fj.code == kExitOk);
            Fan fan = fan_from_json(fj.json()["fan"]);
            CHECK(fan == fan_of_kit(f, 3).slice);
            CHECK(fan_to_json(fan).dump() == fj.json()["fan"].dump());
            for (auto& face : fj.json()["faces"]) {
                auto ff = fan_from_json(face["fan"]);
                CHECK(fan_to_json(ff).dump() == face["fan"].dump());
                CHECK(face["equal"] == true);
            }
        }
        CHECK_THROWS_AS(polytope_from_json(Json::parse(R"({"vertices": [["0"], ["1"]], "facets": []})"), 1),
                        InputError);
    }

    TEST_CASE("hexagon polytope and fan values")
    {
        auto p = run({"polytope", "--datum", data("hex.json")}).json();
        CHECK(p["sigma0"]["vertices"].size() == 6);
        CHECK(p["skeleton_sizes"] == Json::parse("[6, 6, 1]"));
        auto f = run({"fan", "--datum", data("hex.json")}).json();
        CHECK(f["fan"]["cones"].size() == 6);
        CHECK(f["proper"] == true);
        CHECK(f["complete"] == true);
        CHECK(f["faces"].size() == 13);
    }

    TEST_CASE("reports")
    {
        auto hex = run({"report", "--datum", data("hex.json")});
        REQUIRE(hex.code == kExitOk);
        auto h = hex.json();
        CHECK_FALSE(h.contains("failed_stage"));
        CHECK(h["validation"]["valid"] == true);
        CHECK(h["polytope"]["sigma0"]["vertices"].size() == 6);
        CHECK(h["strata"]["torus_cohomology"] == Json::parse("[1, 2, 1]"));
        CHECK(h["counts"]["count"] == 16);

        auto g = run({"report", "--datum", data("g1.json")}).json();
        CHECK(g["polytope"]["sigma0"]["vertices"].size() == 2);
        CHECK(g["polytope"]["skeleton_sizes"] == Json::parse("[2, 1]"));
        CHECK(g["strata"]["torus_cohomology"] == Json::parse("[1, 1]"));

        auto bad = run({"report", "--datum", data("bad.json")});
        CHECK(bad.code == kExitDomain);
        auto b = bad.json();
        CHECK(b["failed_stage"] == "validation");
        CHECK(b.contains("validation"));
        CHECK_FALSE(b.contains("extension"));
        CHECK_FALSE(b.contains("polytope"));
    }

    TEST_CASE("inline input, --out and the window variable")
    {
        std::string inline_g1 = R"({"rank": 1, "phi": [[1]], "tau_valuations": [["1"]]})";
        auto a = run({"theta-basis", "--datum", inline_g1});
        CHECK(a.json()["count"] == 4);
        auto path = (std::filesystem::temp_directory_path() / "degenkit_cli_out.json").string();
        std::remove(path.c_str());
        auto o = run({"-o", path, "theta-basis", "--datum", inline_g1});
        CHECK(o.code == kExitOk);
        CHECK(o.out.empty());
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(ss.str() == a.out);
        std::remove(path.c_str());

        ::setenv("DEGENKIT_WINDOW", "1", 1);
        auto w1 = run({"fan", "--datum", data("g1.json")});
        ::unsetenv("DEGENKIT_WINDOW");
        auto w3 = run({"fan", "--datum", data("g1.json")});
        CHECK(w1.code == kExitOk);
        CHECK(w1.json()["tau_cones"] < w3.json()["tau_cones"]);
    }

    TEST_CASE("algebra verbs")
    {
        auto h2 = run({"h2", "--n", "2", "--value", "1 * t^(1)"});
        REQUIRE(h2.code == kExitOk);
        auto j = h2.json();
        CHECK(j["omega"] == "1 * t^(1)");
        CHECK(j["table"][1][1] == "1 * t^(1)");
        auto co = run({"cohomology", "--cochain", R"J({"group": [2], "table": [["1", "1"], ["1", "1 * t^(2)"]]})J"});
        REQUIRE(co.code == kExitOk);
        CHECK(co.json()["cocycle"] == true);
        CHECK(co.json()["coboundary"] == true);
        auto heis = run({"heisenberg", "--group", "2,2", "--datum", data("phi2.json")});
        REQUIRE(heis.code == kExitOk);
        CHECK(heis.json()["ok"] == true);
        CHECK(heis.json()["commutant_dim"] == 1);
        CHECK(heis.json()["standard_basis"]["translation_law"] == true);
        auto ct = run({"complex-theta", "--input", R"({"W": [[[0, 1]]], "g1": 1})"});
        REQUIRE(ct.code == kExitOk);
        double re = ct.json()["value"][0].get<double>();
        CHECK(std::abs(re - 1.0864348112133080) < 1e-12);
        CHECK(ct.json()["residuals"]["characteristic"].get<double>() < 1e-9);
    }

    TEST_CASE("theta-build output")
    {
        auto r = run({"theta-build", "--datum", data("g1.json"), "--x", "0", "--cutoff", "20"});
        REQUIRE(r.code == kExitOk);
        auto j = r.json();
        CHECK(j["terms"].size() == 7);
        CHECK(j["cutoff"] == "20");
        bool found = false;
        for (auto& t : j["terms"])
            if (t["weight"] == Json::parse("[8]")) {
                CHECK(t["valuation"] == "8");
                found = true;
            }
        CHECK(found);
    }
}
