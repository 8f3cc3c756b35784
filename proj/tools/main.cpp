#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "report/commands.hpp"

using nij::report::Json;

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path);
    if (!in) throw nij::InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json(const std::string& path) {
    try {
        return Json::parse(slurp(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw nij::report::SchemaError({path + ": malformed JSON (" + e.what() + ")"});
    }
}

struct Options {
    std::string input = "-";
    std::string metric;
    std::string samples;
    bool pretty = false;
    std::string profile;
    int p = 1, q = 1, r = 2;
    int n = 5, q_degree = 3;
    int n_cap = 8;
};

// Document from --input, with --metric and --samples spliced in before validation.
Json load_document(const Options& o) {
    Json doc = read_json(o.input);
    if (!o.metric.empty() && doc.is_object()) doc["options"]["metric"] = read_json(o.metric);
    if (!o.samples.empty() && doc.is_object()) doc["sample_points"] = read_json(o.samples);
    return doc;
}

Json run(const std::string& command, const std::string& target, const Options& o, bool input_given) {
    using namespace nij::report;
    if (command == "verify-controlled") return verify_controlled(nij::JordanProfile::parse(o.profile), o.n_cap);
    Json doc;
    if (command == "construct" && (target == "prop81" || target == "nin-form") && !input_given) {
        doc = Json{{"kind", "construction"}, {"construction", target}};
        doc["parameters"] = target == "prop81" ? Json{{"p", o.p}, {"q", o.q}, {"r", o.r}} : Json{{"n", o.n}, {"q", o.q_degree}};
        if (!o.samples.empty()) doc["sample_points"] = read_json(o.samples);
    } else {
        doc = load_document(o);
    }
    if (command == "construct" && doc.is_object()) {
        if (!doc.contains("construction")) doc["construction"] = target;
        else if (doc["construction"] != target)
            throw nij::InputError("document describes construction " + doc["construction"].dump() + ", not " + target);
    }
    return run_command(command, parse_spec(doc));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact integrability analysis of tensor fields of Nijenhuis type"};
    app.require_subcommand(1);
    Options o;
    std::string target;

    auto common = [&](CLI::App* sub) {
        auto* in = sub->add_option("--input", o.input, "input document (JSON); '-' reads standard input");
        in->check(CLI::ExistingFile | CLI::IsMember({"-"}));
        sub->add_flag("--pretty", o.pretty, "append a human-readable verdict table");
        sub->add_option("--metric", o.metric, "JSON file with a constant metric matrix")->check(CLI::ExistingFile);
        sub->add_option("--samples", o.samples, "JSON file with sample points")->check(CLI::ExistingFile);
    };
    for (const char* name : {"analyze-11", "analyze-form", "analyze-sym02", "analyze-sym20", "analyze-bivector", "lie-check"})
        common(app.add_subcommand(name, std::string("analyze a document with ") + name));

    auto* cons = app.add_subcommand("construct", "generate and check one of the explicit constructions");
    common(cons);
    cons->add_option("target", target, "prop81, affine-tangent, nin-form or product-extension")
        ->required()
        ->check(CLI::IsMember({"prop81", "affine-tangent", "nin-form", "product-extension"}));
    cons->add_option("--p", o.p, "prop81: shortest orbit");
    cons->add_option("--q", o.q, "prop81: middle orbit");
    cons->add_option("--r", o.r, "prop81: longest orbit");
    cons->add_option("--n", o.n, "nin-form: dimension");
    cons->add_option("--q-degree", o.q_degree, "nin-form: form degree");

    auto* vc = app.add_subcommand("verify-controlled", "certify whether N controls a Jordan type");
    vc->add_option("--profile", o.profile, "block lengths, e.g. \"2 1 1\"")->required();
    vc->add_option("--n-cap", o.n_cap, "largest dimension accepted")->check(CLI::PositiveNumber);
    vc->add_flag("--pretty", o.pretty, "append a human-readable verdict table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const CLI::Option* in = sub->get_option_no_throw("--input");
    bool input_given = in != nullptr && in->count() > 0;
    try {
        Json report = run(sub->get_name(), target, o, input_given);
        std::cout << report.dump(2) << '\n';
        if (o.pretty) std::cout << '\n' << nij::report::pretty_table(report);
        return 0;
    } catch (const std::exception& e) {
        std::cout << nij::report::error_json(e).dump(2) << '\n';
        std::cerr << "error: " << e.what() << '\n';
        return nij::report::exit_code(e);
    }
}
