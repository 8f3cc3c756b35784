#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "gen.hpp"
#include "nij/distribution.hpp"
#include "nij/frame.hpp"
#include "report/commands.hpp"

using namespace nij;
using namespace nij::report;

namespace {

Json doc(const char* text) { return Json::parse(text); }

std::vector<std::string> violations_of(const Json& d) {
    try {
        parse_spec(d);
    } catch (const SchemaError& e) {
        return e.violations();
    }
    return {};
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
    for (const auto& s : v)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

const Json& verdict(const Json& report, const std::string& criterion) {
    for (const auto& v : report["verdicts"])
        if (v["criterion"] == criterion) return v;
    FAIL("no verdict " << criterion);
    static Json none;
    return none;
}

std::string command_for(Kind kind) {
    switch (kind) {
    case Kind::tensor11: return "analyze-11";
    case Kind::form: return "analyze-form";
    case Kind::sym02: return "analyze-sym02";
    case Kind::sym20: return "analyze-sym20";
    case Kind::bivector: return "analyze-bivector";
    case Kind::lie_algebra: return "lie-check";
    default: return "construct";
    }
}

// Every "fails" carries a witness, every "not-applicable" a reason.
void check_tristate(const Json& report) {
    for (const auto& v : report["verdicts"]) {
        std::string s = v["status"];
        CHECK((s == "holds" || s == "fails" || s == "not-applicable"));
        if (s == "fails") {
            REQUIRE(v.contains("witness"));
            CHECK_FALSE(v["witness"].is_null());
        }
        if (s == "not-applicable") CHECK(v.contains("reason"));
    }
}

std::vector<std::filesystem::path> example_files() {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(NIJ_DOCS_EXAMPLES))
        if (e.path().extension() == ".json") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

Json read(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return Json::parse(ss.str());
}

}  // namespace

TEST_CASE("minimal tensor11 document parses") {
    auto spec = parse_spec(doc(R"({"kind":"tensor11","chart":["x","y"],"components":{"1;2":"1"},"sample_points":[["0","0"]]})"));
    CHECK(spec.kind == Kind::tensor11);
    REQUIRE(spec.tensor.has_value());
    CHECK(spec.tensor->at({0, 1}) == ScalarField(1));
    CHECK(spec.samples.size() == 1);
}

TEST_CASE("wrong arity key is rejected") {
    auto v = violations_of(doc(R"({"kind":"tensor11","chart":["x","y"],"components":{"1;2,3":"1"},"sample_points":[["0","0"]]})"));
    REQUIRE(v.size() == 1);
    CHECK(mentions(v, "lower arity 2, expected 1"));
}

TEST_CASE("all violations are reported together") {
    auto v = violations_of(doc(R"({"kind":"sym02","chart":["x","x"],"components":{";1":"1"},
        "sample_points":[["1.5"]],"options":{"verbosity":-1,"colour":1},"extra":true})"));
    CHECK(mentions(v, "extra: unknown field"));
    CHECK(mentions(v, "duplicate coordinate name"));
    CHECK(mentions(v, "options.colour"));
    CHECK(mentions(v, "options.verbosity"));

    v = violations_of(doc(R"({"kind":"form","chart":["x","y","z"],"degree":2,
        "components":{";1,2":"x","2,1;":"1",";2,1":"y",";1,1":"1",";3,4":"2.5"},
        "sample_points":[["0","1/2",3],["0","1"],[0.5,"0","0"]]})"));
    CHECK(mentions(v, "upper arity 2, expected 0"));
    CHECK(mentions(v, "same component as key"));
    CHECK(mentions(v, "components[\";1,1\"]"));
    CHECK(mentions(v, "index '4' outside 1..3"));
    CHECK(mentions(v, "sample_points[1]"));
    CHECK(mentions(v, "floating-point literal"));
    CHECK(v.size() >= 6);

    v = violations_of(doc(R"({"kind":"lie_algebra","orbits":[2,1],"brackets":[
        {"left":"1.1","right":"1.3","value":{"2.1":"1"}},
        {"left":"1.1","right":"2.1","value":{"1.2":"x"}},
        {"left":"2.1","right":"1.1","value":{"1.2":"1"}},
        {"left":"1.1","right":"1.2","value":{"1.2":"1"}}]})"));
    CHECK(mentions(v, "no basis element '1.3'"));
    CHECK(mentions(v, "unknown coordinate 'x'"));
    CHECK_FALSE(mentions(v, "brackets[3]"));

    CHECK(mentions(violations_of(doc(R"({"kind":"nope"})")), "kind"));
    CHECK_THROWS_AS(parse_spec(std::string("{\"kind\":")), SchemaError);
}

TEST_CASE("pole and rank errors come after schema checks") {
    CHECK_THROWS_AS(parse_spec(doc(R"({"kind":"tensor11","chart":["x"],"components":{"1;1":"1/x"},"sample_points":[["0"]]})")),
                    PoleError);
    CHECK_THROWS_AS(parse_spec(doc(R"({"kind":"sym02","chart":["x","y"],"components":{";1,1":"x"},"sample_points":[["0","1"]]})")),
                    RankError);
    CHECK_THROWS_AS(
        parse_spec(doc(R"({"kind":"sym02","chart":["x","y"],"rank":2,"components":{";1,1":"1"},"sample_points":[["0","1"]]})")),
        RankError);
    CHECK_THROWS_AS(parse_spec(doc(R"({"kind":"tensor11","chart":["x","y"],"components":{"1;2":"x"},"sample_points":[["0","1"]]})")),
                    RankError);
    auto spec = parse_spec(doc(R"({"kind":"sym02","chart":["x","y"],"components":{";1,1":"1"},"sample_points":[["0","1"]]})"));
    CHECK(spec.rank == 1);
}

TEST_CASE("prop81 (1,1,2) document round-trips") {
    AnalysisSpec s;
    s.kind = Kind::lie_algebra;
    s.algebra = build_prop81(1, 1, 2);
    Json first = serialize(s);
    AnalysisSpec a = parse_spec(first);
    CHECK(a == s);
    AnalysisSpec b = parse_spec(serialize(a));
    CHECK(a == b);
    CHECK(serialize(b).dump() == first.dump());
    CHECK(first["brackets"].size() == 1);

    auto c = parse_spec(doc(R"({"kind":"construction","construction":"prop81","parameters":{"p":1,"q":1,"r":2}})"));
    CHECK(parse_spec(serialize(c)) == c);
}

TEST_CASE("parse after serialize is the identity on random documents") {
    gen::Rng rng(71);
    int valid = 0;
    for (int it = 0; it < 120; ++it) {
        int n = rng.integer(2, 4);
        Chart c = Chart::standard(static_cast<std::size_t>(n));
        AnalysisSpec s;
        s.chart = c;
        s.samples = default_samples(static_cast<std::size_t>(n));
        switch (it % 6) {
        case 0:
            s.kind = Kind::tensor11;
            s.tensor = rng.endomorphism(c, 1);
            break;
        case 1:
            s.kind = Kind::form;
            s.tensor = rng.form(c, rng.integer(0, n), 2);
            break;
        case 2: {
            s.kind = Kind::sym02;
            auto a = rng.vector_field(c, 1).as_vector();
            s.tensor = gen::outer(c, a, a, false);
            break;
        }
        case 3: {
            s.kind = Kind::sym20;
            auto a = rng.vector_field(c, 1).as_vector();
            auto b = rng.vector_field(c, 1).as_vector();
            s.tensor = gen::outer(c, a, a, true) + gen::outer(c, b, b, true);
            break;
        }
        case 4: {
            s.kind = Kind::bivector;
            s.tensor = TensorField(c, 2, 0, Symmetry::antisymmetric);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (rng.coin(60)) s.tensor->set({i, j}, rng.field(static_cast<std::size_t>(n), 1));
            break;
        }
        default: {
            s.kind = Kind::lie_algebra;
            s.chart.reset();
            s.samples.clear();
            LieFrameSpec alg(gen::partition(rng, n + 1));
            for (int x = 0; x < alg.dim(); ++x)
                for (int y = x + 1; y < alg.dim(); ++y)
                    if (rng.coin(30)) {
                        std::vector<ScalarField> v(static_cast<std::size_t>(alg.dim()));
                        v[static_cast<std::size_t>(rng.integer(0, alg.dim() - 1))] = ScalarField(rng.nonzero_rational());
                        alg.set_bracket(x, y, v);
                    }
            s.algebra = alg;
            break;
        }
        }
        if (rng.coin(20) && s.chart) s.verbosity = 1;
        AnalysisSpec a;
        try {
            a = parse_spec(serialize(s));
        } catch (const PoleError&) {
            continue;
        } catch (const RankError&) {
            continue;
        }
        ++valid;
        CHECK(a.tensor == s.tensor);
        CHECK(a.algebra == s.algebra);
        AnalysisSpec b = parse_spec(serialize(a));
        CHECK(a == b);
        CHECK(serialize(a).dump() == serialize(b).dump());
    }
    CHECK(valid >= 60);
}

TEST_CASE("analyze-11 on the (1,1,2) realization") {
    Realization rz = realize_on_chart(build_prop81(1, 1, 2));
    AnalysisSpec s;
    s.kind = Kind::tensor11;
    s.chart = rz.chart;
    s.tensor = rz.theta;
    s.samples = default_samples(4);
    Json rep = run_command("analyze-11", parse_spec(serialize(s)));
    CHECK(rep["invariants"]["profile"] == "2 1 1");
    CHECK(rep["invariants"]["csd"] == false);
    CHECK(verdict(rep, "N vanishes")["status"] == "holds");
    const Json& k1 = verdict(rep, "Ker Theta^1 integrable");
    CHECK(k1["status"] == "fails");
    CHECK(k1["witness"]["type"] == "bracket");
    CHECK_FALSE(k1["witness"]["bracket"].empty());
    CHECK(verdict(rep, "integrability (nilpotent): N = 0 and every Ker Theta^i integrable")["status"] == "fails");
    CHECK(rep["conclusion"] == "not integrable");
    CHECK(rep["tensors"]["kernel_family"][0]["agree"] == true);
    check_tristate(rep);
}

TEST_CASE("analyze-bivector on the inverse of a non-closed form") {
    auto spec = parse_spec(doc(R"J({"kind":"bivector","chart":["x1","x2","x3","x4"],
        "components":{"1,2;":"-1","3,4;":"-1/(1 + x1)"},"sample_points":[["1/2","1/3","1/5","1/7"]]})J"));
    Json rep = run_command("analyze-bivector", spec);
    const Json& nh = verdict(rep, "N-hat vanishes");
    CHECK(nh["status"] == "holds");
    CHECK(nh["label"] == "necessary condition holds; sufficiency requires leafwise closedness");
    CHECK(verdict(rep, "Im Theta integrable")["status"] == "holds");
    const Json& lc = verdict(rep, "inverse on Im Theta closed along each leaf");
    CHECK(lc["status"] == "fails");
    CHECK_FALSE(lc["witness"]["value"].is_null());
    CHECK(rep["conclusion"] == "not integrable");
    check_tristate(rep);
}

TEST_CASE("analyze-sym02 on diag(1,1,0)") {
    auto spec = parse_spec(doc(R"({"kind":"sym02","chart":["x","y","z"],"components":{";1,1":"1",";2,2":"1"},
        "sample_points":[["0","0","0"]]})"));
    Json rep = run_command("analyze-sym02", spec);
    CHECK(rep["tensors"]["N'"]["vanishes"] == true);
    CHECK(rep["tensors"]["N''"]["vanishes"] == true);
    CHECK(rep["conclusion"] == "integrable");
    CHECK(rep["cross_check"]["kernel_integrable"] == true);
    CHECK(rep["cross_check"]["projectable"] == true);
}

TEST_CASE("sym02 verdict coherence") {
    gen::Rng rng(404);
    Chart c = Chart::standard(3);
    int integrable = 0, not_integrable = 0;
    for (int it = 0; it < 24; ++it) {
        AnalysisSpec s;
        s.kind = Kind::sym02;
        s.chart = c;
        s.samples = default_samples(3);
        if (it % 3 == 2) {
            // Ker g = Ker(dz - y dx - k dy) is a contact distribution.
            std::vector<ScalarField> a{-c.coordinate(1), ScalarField(rng.integer(-2, 2)), ScalarField(1)};
            for (auto& x : a) x = x + c.zero();
            s.tensor = gen::outer(c, a, a, false);
        } else {
            s.tensor = gen::foliated_metric(rng, c, it % 3).g;
        }
        AnalysisSpec p;
        try {
            p = parse_spec(serialize(s));
        } catch (const RankError&) {
            continue;
        }
        Json rep = run_command("analyze-sym02", p);
        bool np = rep["tensors"]["N'"]["vanishes"];
        bool npp = rep["tensors"]["N''"]["vanishes"];
        bool integ = rep["conclusion"] == "integrable";
        CHECK(integ == (np && npp));
        CHECK(verdict(rep, "Ker g integrable (N' = 0)")["status"] == (np ? "holds" : "fails"));
        CHECK(verdict(rep, "g projectable along Ker g (N'' = 0)")["status"] == (npp ? "holds" : "fails"));
        CHECK(rep["cross_check"]["agrees_with_N'"] == true);
        if (!rep["cross_check"]["agrees_with_N''"].is_null()) CHECK(rep["cross_check"]["agrees_with_N''"] == true);
        check_tristate(rep);
        (integ ? integrable : not_integrable)++;
    }
    CHECK(integrable >= 3);
    CHECK(not_integrable >= 3);
}

TEST_CASE("commands reject documents of the wrong kind") {
    auto spec = parse_spec(doc(R"({"kind":"tensor11","chart":["x"],"components":{},"sample_points":[["0"]]})"));
    CHECK_THROWS_AS(run_command("analyze-form", spec), InputError);
    CHECK_THROWS_AS(run_command("analyze-12", spec), InputError);
}

TEST_CASE("three-step realization is unsupported") {
    auto spec = parse_spec(doc(R"({"kind":"lie_algebra","orbits":[1,1,1,1],"brackets":[
        {"left":"1.1","right":"2.1","value":{"3.1":"1"}},{"left":"1.1","right":"3.1","value":{"4.1":"1"}}]})"));
    try {
        run_command("lie-check", spec);
        FAIL("expected UnsupportedError");
    } catch (const UnsupportedError& e) {
        CHECK(exit_code(e) == 3);
        CHECK(error_json(e)["error"]["type"] == "unsupported");
    }
    SchemaError se({"a: b", "c: d"});
    CHECK(exit_code(se) == 2);
    CHECK(error_json(se)["error"]["violations"].size() == 2);
    CHECK(exit_code(PoleError("x")) == 2);
}

TEST_CASE("lie-check with function coefficients uses the explicit frame") {
    auto spec = parse_spec(doc(R"({"kind":"lie_algebra","chart":["x1","x2","x3"],"orbits":[2,1],
        "frame":[["1","0","0"],["0","1","x1"],["0","0","1 + x1^2"]]})"));
    CHECK_FALSE(spec.algebra->constant_coefficients());
    Json rep = run_command("lie-check", spec);
    CHECK(rep["realization"]["source"] == "explicit frame");
    CHECK(rep["realization"]["agrees"] == true);
    CHECK(rep["invariants"]["jacobi"].is_null());
    check_tristate(rep);
}

TEST_CASE("verify-controlled agrees with csd") {
    for (int n = 1; n <= 6; ++n)
        for (const auto& prof : all_profiles(n)) {
            Json rep = verify_controlled(prof, 8);
            CHECK(rep["certificate"]["consistent_with_csd"] == true);
            CHECK((rep["conclusion"] == "controlled by N") == csd(prof));
            check_tristate(rep);
        }
    CHECK_THROWS_AS(verify_controlled(JordanProfile({5, 4}), 8), InputError);
}

TEST_CASE("constructions produce analyzable documents") {
    auto at = parse_spec(doc(R"({"kind":"construction","construction":"affine-tangent","chart":["y1","y2","y3"],
        "generators":[["1","0","0"],["0","1","y1"]]})"));
    Json rep = run_command("construct", at);
    CHECK(rep["checks"]["N_vanishes"] == true);
    CHECK(rep["checks"]["profile"] == "2 1 1");
    CHECK(rep["conclusion"] == "not integrable");
    Json again = run_command("analyze-11", parse_spec(rep["document"]));
    CHECK(again["conclusion"] == "not integrable");

    auto nin = parse_spec(doc(R"({"kind":"construction","construction":"nin-form","parameters":{"n":6,"q":4}})"));
    rep = run_command("construct", nin);
    CHECK(rep["conclusion"] == "not integrable");
    Json form = run_command("analyze-form", parse_spec(rep["document"]));
    CHECK(verdict(form, "closed (necessary for integrability)")["status"] == "holds");
    CHECK(form["conclusion"] == "undetermined");

    auto bad = parse_spec(doc(R"({"kind":"construction","construction":"product-extension","chart":["x1","x2"],
        "parameters":{"leaf_dim":2},"g_leaf":[["1","0"],["0","x1^2"]],"theta_leaf":[["1","0"],["0","1"]]})"));
    CHECK_THROWS_AS(run_command("construct", bad), PreconditionError);
}

TEST_CASE("shipped examples parse, round-trip and give deterministic reports") {
    auto files = example_files();
    REQUIRE(files.size() >= 10);
    std::set<std::string> kinds;
    for (const auto& f : files) {
        CAPTURE(f.string());
        AnalysisSpec s = parse_spec(read(f));
        kinds.insert(kind_name(s.kind));
        CHECK(parse_spec(serialize(s)) == s);
        Json a = run_command(command_for(s.kind), s);
        Json b = run_command(command_for(s.kind), parse_spec(read(f)));
        CHECK(a.dump() == b.dump());
        check_tristate(a);
    }
    CHECK(kinds.size() == 7);
}
