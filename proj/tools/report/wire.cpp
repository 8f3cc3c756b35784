#include "report/wire.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "nij/differential.hpp"
#include "nij/distribution.hpp"
#include "nij/expression.hpp"
#include "nij/hodge.hpp"
#include "nij/linalg.hpp"
#include "nij/nijenhuis.hpp"

namespace nij::report {

std::string kind_name(Kind kind) {
    switch (kind) {
    case Kind::tensor11: return "tensor11";
    case Kind::form: return "form";
    case Kind::sym02: return "sym02";
    case Kind::sym20: return "sym20";
    case Kind::bivector: return "bivector";
    case Kind::lie_algebra: return "lie_algebra";
    case Kind::construction: return "construction";
    }
    return "";
}

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

}  // namespace

SchemaError::SchemaError(std::vector<std::string> violations)
    : InputError("schema violations: " + join(violations, "; ")), violations_(std::move(violations)) {}

namespace {

const std::vector<std::string> kConstructions = {"prop81", "affine-tangent", "nin-form", "product-extension"};

std::optional<Kind> kind_of(const std::string& s) {
    for (Kind k : {Kind::tensor11, Kind::form, Kind::sym02, Kind::sym20, Kind::bivector, Kind::lie_algebra,
                   Kind::construction})
        if (kind_name(k) == s) return k;
    return std::nullopt;
}

bool is_tensor_kind(Kind k) { return k != Kind::lie_algebra && k != Kind::construction; }

std::optional<int> small_int(const std::string& s) {
    if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return std::nullopt;
    return std::stoi(s);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out(1);
    for (char c : s) {
        if (c == sep) out.emplace_back();
        else out.back() += c;
    }
    return out;
}

class Parser {
public:
    std::vector<std::string> errors;
    std::vector<std::string> poles;

    void fail(const std::string& path, const std::string& what) { errors.push_back(path + ": " + what); }

    std::optional<int> integer(const Json& j, const std::string& path) {
        if (!j.is_number_integer()) {
            fail(path, "expected an integer");
            return std::nullopt;
        }
        return j.get<int>();
    }

    std::optional<Rational> rational(const Json& j, const std::string& path) {
        if (j.is_number_integer()) return Rational::parse(j.dump());
        if (j.is_number_float()) {
            fail(path, "floating-point literal; write rationals as strings such as \"3/2\"");
            return std::nullopt;
        }
        if (!j.is_string()) {
            fail(path, "expected a rational string");
            return std::nullopt;
        }
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const InputError& e) {
            fail(path, e.what());
            return std::nullopt;
        }
    }

    std::optional<ScalarField> expression(const Json& j, const std::string& path, const std::vector<std::string>& coords) {
        std::string text;
        if (j.is_number_integer()) {
            text = j.dump();
        } else if (j.is_string()) {
            text = j.get<std::string>();
        } else {
            fail(path, j.is_number_float() ? "floating-point literal; write coefficients as strings"
                                           : "expected an expression string");
            return std::nullopt;
        }
        try {
            return parse_scalar(text, coords);
        } catch (const InputError& e) {
            fail(path, e.what());
            return std::nullopt;
        }
    }

    std::optional<Chart> chart(const Json& j) {
        if (!j.is_array() || j.empty()) {
            fail("chart", "expected a nonempty list of coordinate names");
            return std::nullopt;
        }
        std::vector<std::string> names;
        std::set<std::string> seen;
        bool ok = true;
        for (std::size_t i = 0; i < j.size(); ++i) {
            std::string path = "chart[" + std::to_string(i) + "]";
            const Json& x = j[i];
            bool ident = x.is_string() && !x.get<std::string>().empty();
            if (ident) {
                const std::string& s = x.get_ref<const std::string&>();
                ident = std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_';
                for (char c : s) ident = ident && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
            }
            if (!ident) {
                fail(path, "expected an identifier");
                ok = false;
                continue;
            }
            if (!seen.insert(x.get<std::string>()).second) {
                fail(path, "duplicate coordinate name");
                ok = false;
            }
            names.push_back(x.get<std::string>());
        }
        if (!ok) return std::nullopt;
        return Chart(names);
    }

    std::vector<Point> samples(const Json& j, std::size_t dim) {
        std::vector<Point> out;
        if (!j.is_array()) {
            fail("sample_points", "expected a list of points");
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            std::string path = "sample_points[" + std::to_string(i) + "]";
            if (!j[i].is_array() || j[i].size() != dim) {
                fail(path, "expected a point with " + std::to_string(dim) + " coordinates");
                continue;
            }
            Point p;
            bool ok = true;
            for (std::size_t a = 0; a < dim; ++a) {
                auto r = rational(j[i][a], path + "[" + std::to_string(a) + "]");
                ok = ok && r.has_value();
                if (r) p.push_back(*r);
            }
            if (ok) out.push_back(std::move(p));
        }
        return out;
    }

    std::optional<Matrix<ScalarField>> field_matrix(const Json& j, const std::string& path, std::size_t rows,
                                                    std::size_t cols, const Chart& ch) {
        if (!j.is_array() || j.size() != rows) {
            fail(path, "expected " + std::to_string(rows) + " rows");
            return std::nullopt;
        }
        Matrix<ScalarField> m(rows, cols, ch.zero());
        bool ok = true;
        for (std::size_t a = 0; a < rows; ++a) {
            std::string rp = path + "[" + std::to_string(a) + "]";
            if (!j[a].is_array() || j[a].size() != cols) {
                fail(rp, "expected " + std::to_string(cols) + " entries");
                ok = false;
                continue;
            }
            for (std::size_t b = 0; b < cols; ++b) {
                auto f = expression(j[a][b], rp + "[" + std::to_string(b) + "]", ch.coords());
                if (f) m(a, b) = *f;
                else ok = false;
            }
        }
        if (!ok) return std::nullopt;
        return m;
    }

    // "u1,u2;l1,l2" with 1-based indices in [1, n].
    std::optional<Index> key(const std::string& text, int up, int low, std::size_t n, const std::string& path) {
        auto halves = split(text, ';');
        if (halves.size() != 2) {
            fail(path, "key must contain exactly one ';'");
            return std::nullopt;
        }
        Index idx;
        const int want[2] = {up, low};
        const char* side[2] = {"upper", "lower"};
        bool ok = true;
        for (int h = 0; h < 2; ++h) {
            std::vector<std::string> parts;
            if (!halves[static_cast<std::size_t>(h)].empty()) parts = split(halves[static_cast<std::size_t>(h)], ',');
            if (static_cast<int>(parts.size()) != want[h]) {
                fail(path, std::string(side[h]) + " arity " + std::to_string(parts.size()) + ", expected " +
                               std::to_string(want[h]));
                ok = false;
                continue;
            }
            for (const auto& part : parts) {
                auto v = small_int(part);
                if (!v || *v < 1 || static_cast<std::size_t>(*v) > n) {
                    fail(path, "index '" + part + "' outside 1.." + std::to_string(n));
                    ok = false;
                } else {
                    idx.push_back(*v - 1);
                }
            }
        }
        if (!ok) return std::nullopt;
        return idx;
    }

    // Label "orbit.position", both 1-based.
    std::optional<int> label(const Json& j, const LieFrameSpec& spec, const std::string& path) {
        if (!j.is_string()) {
            fail(path, "expected a basis label \"orbit.position\"");
            return std::nullopt;
        }
        auto parts = split(j.get<std::string>(), '.');
        std::optional<int> o, i;
        if (parts.size() == 2) {
            o = small_int(parts[0]);
            i = small_int(parts[1]);
        }
        if (!o || !i || *o < 1 || *o > static_cast<int>(spec.orbits().size()) || *i < 1 ||
            *i > spec.orbits()[static_cast<std::size_t>(*o - 1)]) {
            fail(path, "no basis element '" + (j.is_string() ? j.get<std::string>() : j.dump()) + "'");
            return std::nullopt;
        }
        return spec.basis(*o - 1, *i);
    }

    void check_keys(const Json& doc, const std::vector<std::string>& allowed) {
        for (const auto& [k, v] : doc.items())
            if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) fail(k, "unknown field");
    }

    void check_poles(const TensorField& t, const std::vector<Point>& pts, const std::string& what) {
        for (const auto& [idx, f] : t.components()) {
            if (f.is_polynomial()) continue;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                try {
                    f.evaluate(pts[i]);
                } catch (const PoleError&) {
                    poles.push_back(what + "[\"" + t.key_string(idx) + "\"] has a pole at sample " + std::to_string(i + 1));
                }
            }
        }
    }

    void check_poles(const ScalarField& f, const std::vector<Point>& pts, const std::string& what) {
        if (f.is_polynomial()) return;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            try {
                f.evaluate(pts[i]);
            } catch (const PoleError&) {
                poles.push_back(what + " has a pole at sample " + std::to_string(i + 1));
            }
        }
    }
};

TensorField empty_tensor(Kind kind, const Chart& ch, int degree) {
    switch (kind) {
    case Kind::tensor11: return TensorField(ch, 1, 1);
    case Kind::form: return zero_form(ch, degree);
    case Kind::sym02: return TensorField(ch, 0, 2, Symmetry::symmetric);
    case Kind::sym20: return TensorField(ch, 2, 0, Symmetry::symmetric);
    default: return TensorField(ch, 2, 0, Symmetry::antisymmetric);
    }
}

void parse_tensor(Parser& ps, const Json& doc, AnalysisSpec& spec) {
    const Chart& ch = *spec.chart;
    std::size_t n = ch.dim();
    int degree = 0;
    if (spec.kind == Kind::form) {
        if (!doc.contains("degree")) {
            ps.fail("degree", "required for kind form");
            return;
        }
        auto q = ps.integer(doc["degree"], "degree");
        if (!q) return;
        if (*q < 0 || static_cast<std::size_t>(*q) > n) {
            ps.fail("degree", "must lie in 0.." + std::to_string(n));
            return;
        }
        degree = *q;
    }
    bool has_rank = spec.kind == Kind::sym02 || spec.kind == Kind::sym20 || spec.kind == Kind::bivector;
    if (doc.contains("rank")) {
        if (!has_rank) {
            ps.fail("rank", "only sym02, sym20 and bivector documents declare a rank");
        } else if (auto r = ps.integer(doc["rank"], "rank")) {
            if (*r < 0 || static_cast<std::size_t>(*r) > n) ps.fail("rank", "must lie in 0.." + std::to_string(n));
            else spec.rank = *r;
        }
    }
    TensorField t = empty_tensor(spec.kind, ch, degree);
    if (!doc.contains("components") || !doc["components"].is_object()) {
        ps.fail("components", "expected an object mapping keys \"u;l\" to expressions");
        return;
    }
    std::map<Index, std::string> seen;
    for (const auto& [k, v] : doc["components"].items()) {
        std::string path = "components[\"" + k + "\"]";
        auto idx = ps.key(k, t.upper(), t.lower(), n, path);
        auto f = ps.expression(v, path, ch.coords());
        if (!idx || !f) continue;
        Index canon = *idx;
        if (t.symmetry() != Symmetry::none) std::sort(canon.begin(), canon.end());
        auto [it, fresh] = seen.emplace(canon, k);
        if (!fresh) {
            ps.fail(path, "same component as key \"" + it->second + "\"");
            continue;
        }
        try {
            t.set(*idx, *f);
        } catch (const InputError& e) {
            ps.fail(path, e.what());
        }
    }
    spec.tensor = std::move(t);
}

void parse_lie(Parser& ps, const Json& doc, AnalysisSpec& spec) {
    if (!doc.contains("orbits") || !doc["orbits"].is_array() || doc["orbits"].empty()) {
        ps.fail("orbits", "expected a nonempty list of orbit lengths");
        return;
    }
    std::vector<int> orbits;
    for (std::size_t i = 0; i < doc["orbits"].size(); ++i)
        if (auto o = ps.integer(doc["orbits"][i], "orbits[" + std::to_string(i) + "]")) orbits.push_back(*o);
    if (orbits.size() != doc["orbits"].size()) return;
    std::optional<LieFrameSpec> base;
    try {
        base.emplace(orbits, spec.chart);
    } catch (const InputError& e) {
        ps.fail("orbits", e.what());
        return;
    }
    bool has_b = doc.contains("brackets");
    bool has_f = doc.contains("frame");
    if (has_b == has_f) {
        ps.fail("brackets", "exactly one of \"brackets\" and \"frame\" is required");
        return;
    }
    std::vector<std::string> coords = spec.chart ? spec.chart->coords() : std::vector<std::string>{};
    if (has_f) {
        if (!spec.chart) {
            ps.fail("frame", "an explicit frame needs a chart");
            return;
        }
        const Json& fr = doc["frame"];
        auto dim = static_cast<std::size_t>(base->dim());
        if (!fr.is_array() || fr.size() != dim) {
            ps.fail("frame", "expected " + std::to_string(dim) + " vector fields");
            return;
        }
        auto m = ps.field_matrix(fr, "frame", dim, spec.chart->dim(), *spec.chart);
        if (!m) return;
        for (std::size_t a = 0; a < dim; ++a) {
            std::vector<ScalarField> comps;
            for (std::size_t b = 0; b < spec.chart->dim(); ++b) comps.push_back((*m)(a, b));
            spec.frame.push_back(TensorField::vector_field(*spec.chart, comps));
        }
        try {
            spec.algebra = frame_spec_from_fields(orbits, spec.frame);
        } catch (const InputError& e) {
            ps.fail("frame", e.what());
        }
        return;
    }
    const Json& br = doc["brackets"];
    if (!br.is_array()) {
        ps.fail("brackets", "expected a list of {left, right, value} entries");
        return;
    }
    std::set<std::pair<int, int>> pairs;
    ScalarField zero = spec.chart ? spec.chart->zero() : ScalarField();
    for (std::size_t e = 0; e < br.size(); ++e) {
        std::string path = "brackets[" + std::to_string(e) + "]";
        const Json& entry = br[e];
        if (!entry.is_object() || !entry.contains("left") || !entry.contains("right") || !entry.contains("value") ||
            !entry["value"].is_object()) {
            ps.fail(path, "expected {\"left\", \"right\", \"value\": {label: coefficient}}");
            continue;
        }
        for (const auto& [k, v] : entry.items())
            if (k != "left" && k != "right" && k != "value") ps.fail(path + "." + k, "unknown field");
        auto x = ps.label(entry["left"], *base, path + ".left");
        auto y = ps.label(entry["right"], *base, path + ".right");
        std::vector<ScalarField> value(static_cast<std::size_t>(base->dim()), zero);
        bool ok = x && y;
        for (const auto& [k, v] : entry["value"].items()) {
            auto z = ps.label(Json(k), *base, path + ".value");
            auto f = ps.expression(v, path + ".value[\"" + k + "\"]", coords);
            if (z && f) value[static_cast<std::size_t>(*z)] = *f;
            else ok = false;
        }
        if (!ok) continue;
        if (*x == *y) {
            ps.fail(path, "left and right coincide");
            continue;
        }
        if (!pairs.insert({std::min(*x, *y), std::max(*x, *y)}).second) {
            ps.fail(path, "bracket of this pair given twice");
            continue;
        }
        base->set_bracket(*x, *y, value);
    }
    spec.algebra = std::move(base);
}

int parameter(Parser& ps, const Json& params, const std::string& name) {
    if (!params.contains(name)) {
        ps.fail("parameters." + name, "required");
        return 0;
    }
    return ps.integer(params[name], "parameters." + name).value_or(0);
}

void parse_construction(Parser& ps, const Json& doc, AnalysisSpec& spec) {
    ConstructionSpec c;
    if (!doc.contains("construction") || !doc["construction"].is_string() ||
        std::find(kConstructions.begin(), kConstructions.end(), doc["construction"].get<std::string>()) ==
            kConstructions.end()) {
        ps.fail("construction", "expected one of prop81, affine-tangent, nin-form, product-extension");
        return;
    }
    c.name = doc["construction"].get<std::string>();
    Json params = doc.contains("parameters") ? doc["parameters"] : Json::object();
    if (!params.is_object()) {
        ps.fail("parameters", "expected an object");
        return;
    }
    std::vector<std::string> names;
    if (c.name == "prop81") names = {"p", "q", "r"};
    if (c.name == "nin-form") names = {"n", "q"};
    if (c.name == "product-extension") names = {"leaf_dim"};
    for (const auto& [k, v] : params.items())
        if (std::find(names.begin(), names.end(), k) == names.end()) ps.fail("parameters." + k, "unknown parameter");
    std::size_t before = ps.errors.size();
    for (const auto& nm : names) c.parameters[nm] = parameter(ps, params, nm);
    bool params_ok = ps.errors.size() == before;
    bool needs_chart = c.name == "affine-tangent" || c.name == "product-extension";
    if (needs_chart && !spec.chart) ps.fail("chart", "required for " + c.name);
    if (!needs_chart && spec.chart) ps.fail("chart", c.name + " generates its own chart");

    if (c.name == "prop81" && params_ok) {
        int p = c.parameters["p"], q = c.parameters["q"], r = c.parameters["r"];
        if (!(1 <= p && p <= q && q < r)) ps.fail("parameters", "prop81 requires 1 <= p <= q < r");
    }
    if (c.name == "nin-form" && params_ok) {
        int n = c.parameters["n"], q = c.parameters["q"];
        if (n < 5 || n > 12 || q < 3 || q > n - 2) ps.fail("parameters", "nin-form requires 5 <= n <= 12 and 3 <= q <= n - 2");
    }
    if (c.name == "affine-tangent" && spec.chart) {
        const Chart& ch = *spec.chart;
        if (!doc.contains("generators") || !doc["generators"].is_array()) {
            ps.fail("generators", "expected a list of vector fields");
        } else {
            auto m = ps.field_matrix(doc["generators"], "generators", doc["generators"].size(), ch.dim(), ch);
            if (m)
                for (std::size_t a = 0; a < m->rows(); ++a) {
                    std::vector<ScalarField> comps;
                    for (std::size_t b = 0; b < ch.dim(); ++b) comps.push_back((*m)(a, b));
                    c.generators.push_back(TensorField::vector_field(ch, comps));
                }
        }
    }
    if (c.name == "product-extension" && spec.chart && params_ok) {
        const Chart& ch = *spec.chart;
        int s = c.parameters["leaf_dim"];
        if (s < 1 || static_cast<std::size_t>(s) > ch.dim()) {
            ps.fail("parameters.leaf_dim", "must lie in 1.." + std::to_string(ch.dim()));
        } else {
            auto su = static_cast<std::size_t>(s);
            for (const char* name : {"g_leaf", "theta_leaf"}) {
                if (!doc.contains(name)) {
                    ps.fail(name, "required");
                    continue;
                }
                auto m = ps.field_matrix(doc[name], name, su, su, ch);
                if (m) (std::string(name) == "g_leaf" ? c.g_leaf : c.theta_leaf) = *m;
            }
            c.gamma_leaf.assign(su * su * su, ch.zero());
            if (doc.contains("gamma_leaf")) {
                if (!doc["gamma_leaf"].is_object()) ps.fail("gamma_leaf", "expected an object mapping \"k;i,j\" to expressions");
                else {
                    std::set<std::string> seen;
                    for (const auto& [k, v] : doc["gamma_leaf"].items()) {
                        std::string path = "gamma_leaf[\"" + k + "\"]";
                        auto idx = ps.key(k, 1, 2, su, path);
                        auto f = ps.expression(v, path, ch.coords());
                        if (!idx || !f) continue;
                        auto flat = (static_cast<std::size_t>((*idx)[0]) * su + static_cast<std::size_t>((*idx)[1])) * su +
                                    static_cast<std::size_t>((*idx)[2]);
                        c.gamma_leaf[flat] = *f;
                    }
                }
            }
        }
    }
    spec.construction = std::move(c);
}

std::vector<std::string> allowed_keys(Kind kind) {
    std::vector<std::string> keys = {"kind", "chart", "sample_points", "options"};
    switch (kind) {
    case Kind::form: keys.push_back("degree"); [[fallthrough]];
    case Kind::tensor11:
    case Kind::sym02:
    case Kind::sym20:
    case Kind::bivector:
        keys.push_back("components");
        keys.push_back("rank");
        break;
    case Kind::lie_algebra:
        keys.insert(keys.end(), {"orbits", "brackets", "frame"});
        break;
    case Kind::construction:
        keys.insert(keys.end(), {"construction", "parameters", "generators", "g_leaf", "theta_leaf", "gamma_leaf"});
        break;
    }
    return keys;
}

// Dimension of sample points, or 0 when the document has no manifold.
std::size_t sample_dim(const AnalysisSpec& spec) {
    if (spec.chart) return spec.chart->dim();
    if (spec.algebra) return static_cast<std::size_t>(spec.algebra->dim());
    if (spec.construction && spec.construction->name == "nin-form")
        return static_cast<std::size_t>(spec.construction->parameters.at("n"));
    return 0;
}

void check_ranks(const AnalysisSpec& spec, AnalysisSpec& out) {
    if (spec.kind == Kind::tensor11) {
        std::size_t n = spec.chart->dim();
        TensorField pw = *spec.tensor;
        for (std::size_t k = 1; k <= n; ++k) {
            auto rp = rank_profile(pw.as_matrix(), spec.samples);
            for (std::size_t i = 0; i < rp.at_samples.size(); ++i)
                if (rp.at_samples[i] != rp.generic)
                    throw RankError("rank of Theta^" + std::to_string(k) + " is " + std::to_string(rp.generic) +
                                    " generically but " + std::to_string(rp.at_samples[i]) + " at sample " +
                                    std::to_string(i + 1));
            if (rp.generic == 0) break;
            pw = compose(pw, *spec.tensor);
        }
    }
    if (spec.kind == Kind::sym02 || spec.kind == Kind::sym20 || spec.kind == Kind::bivector) {
        auto rp = rank_profile(spec.tensor->as_matrix(), spec.samples);
        if (spec.rank && static_cast<std::size_t>(*spec.rank) != rp.generic)
            throw RankError("declared rank " + std::to_string(*spec.rank) + " but generic rank " + std::to_string(rp.generic));
        for (std::size_t i = 0; i < rp.at_samples.size(); ++i)
            if (rp.at_samples[i] != rp.generic)
                throw RankError("rank is " + std::to_string(rp.generic) + " generically but " +
                                std::to_string(rp.at_samples[i]) + " at sample " + std::to_string(i + 1));
        out.rank = static_cast<int>(rp.generic);
    }
    if (spec.construction && spec.construction->name == "affine-tangent")
        (void)VectorFieldSpan::with_generic_rank(*spec.chart, spec.construction->generators, spec.samples);
}

}  // namespace

AnalysisSpec parse_spec(const Json& doc) {
    Parser ps;
    AnalysisSpec spec;
    if (!doc.is_object()) throw SchemaError({"document: expected a JSON object"});
    if (!doc.contains("kind") || !doc["kind"].is_string() || !kind_of(doc["kind"].get<std::string>()))
        throw SchemaError({"kind: expected one of tensor11, form, sym02, sym20, bivector, lie_algebra, construction"});
    spec.kind = *kind_of(doc["kind"].get<std::string>());
    ps.check_keys(doc, allowed_keys(spec.kind));

    bool chart_ok = true;
    if (doc.contains("chart")) {
        spec.chart = ps.chart(doc["chart"]);
        chart_ok = spec.chart.has_value();
    } else if (is_tensor_kind(spec.kind)) {
        ps.fail("chart", "required");
        chart_ok = false;
    }
    if (chart_ok) {
        if (is_tensor_kind(spec.kind)) parse_tensor(ps, doc, spec);
        else if (spec.kind == Kind::lie_algebra) parse_lie(ps, doc, spec);
        else parse_construction(ps, doc, spec);
    }

    std::size_t dim = sample_dim(spec);
    if (doc.contains("sample_points")) {
        if (dim == 0 && ps.errors.empty()) ps.fail("sample_points", "this document has no manifold to sample");
        else if (dim > 0) spec.samples = ps.samples(doc["sample_points"], dim);
    }
    if (is_tensor_kind(spec.kind) && spec.samples.empty()) ps.fail("sample_points", "at least one sample point is required");
    if (!is_tensor_kind(spec.kind) && spec.samples.empty() && dim > 0 && !doc.contains("sample_points") &&
        (spec.chart || spec.kind == Kind::construction))
        spec.samples = default_samples(dim);

    if (doc.contains("options")) {
        const Json& opt = doc["options"];
        if (!opt.is_object()) {
            ps.fail("options", "expected an object");
        } else {
            for (const auto& [k, v] : opt.items())
                if (k != "metric" && k != "verbosity") ps.fail("options." + k, "unknown option");
            if (opt.contains("verbosity"))
                if (auto v = ps.integer(opt["verbosity"], "options.verbosity")) {
                    if (*v < 0) ps.fail("options.verbosity", "must be nonnegative");
                    else spec.verbosity = *v;
                }
            if (opt.contains("metric")) {
                if (!spec.chart) {
                    ps.fail("options.metric", "a metric needs a chart");
                } else {
                    std::size_t n = spec.chart->dim();
                    const Json& mj = opt["metric"];
                    Matrix<Rational> m(n, n);
                    bool ok = mj.is_array() && mj.size() == n;
                    for (std::size_t a = 0; ok && a < n; ++a) {
                        ok = mj[a].is_array() && mj[a].size() == n;
                        for (std::size_t b = 0; ok && b < n; ++b) {
                            auto r = ps.rational(mj[a][b], "options.metric");
                            ok = r.has_value();
                            if (r) m(a, b) = *r;
                        }
                    }
                    if (!ok) {
                        ps.fail("options.metric", "expected a " + std::to_string(n) + " x " + std::to_string(n) + " rational matrix");
                    } else {
                        try {
                            RiemannianBackground bg(*spec.chart, m);
                            spec.metric = m;
                        } catch (const InputError& e) {
                            ps.fail("options.metric", e.what());
                        }
                    }
                }
            }
        }
    }
    if (!ps.errors.empty()) throw SchemaError(ps.errors);

    if (spec.tensor) ps.check_poles(*spec.tensor, spec.samples, "components");
    for (std::size_t a = 0; a < spec.frame.size(); ++a)
        ps.check_poles(spec.frame[a], spec.samples, "frame[" + std::to_string(a) + "]");
    if (spec.construction) {
        const auto& c = *spec.construction;
        for (std::size_t a = 0; a < c.generators.size(); ++a)
            ps.check_poles(c.generators[a], spec.samples, "generators[" + std::to_string(a) + "]");
        for (const auto* m : {&c.g_leaf, &c.theta_leaf})
            for (std::size_t a = 0; a < m->rows(); ++a)
                for (std::size_t b = 0; b < m->cols(); ++b)
                    ps.check_poles((*m)(a, b), spec.samples, "leaf entry (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
    }
    if (spec.algebra && spec.chart && spec.frame.empty())
        for (const auto& [xy, value] : spec.algebra->table())
            for (std::size_t k = 0; k < value.size(); ++k)
                ps.check_poles(value[k], spec.samples,
                               "brackets[" + basis_label(*spec.algebra, xy.first) + ", " + basis_label(*spec.algebra, xy.second) + "]");
    if (!ps.poles.empty()) throw PoleError(join(ps.poles, "; "));

    AnalysisSpec out = spec;
    check_ranks(spec, out);
    return out;
}

AnalysisSpec parse_spec(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError({std::string("document: malformed JSON (") + e.what() + ")"});
    }
    return parse_spec(doc);
}

Json point_json(const Point& p) {
    Json j = Json::array();
    for (const auto& x : p) j.push_back(x.str());
    return j;
}

Json rational_matrix_json(const Matrix<Rational>& m) {
    Json j = Json::array();
    for (std::size_t a = 0; a < m.rows(); ++a) {
        Json row = Json::array();
        for (std::size_t b = 0; b < m.cols(); ++b) row.push_back(m(a, b).str());
        j.push_back(row);
    }
    return j;
}

Json field_matrix_json(const Matrix<ScalarField>& m, const Chart& chart) {
    Json j = Json::array();
    for (std::size_t a = 0; a < m.rows(); ++a) {
        Json row = Json::array();
        for (std::size_t b = 0; b < m.cols(); ++b) row.push_back(m(a, b).str(chart.coords()));
        j.push_back(row);
    }
    return j;
}

Json components_json(const TensorField& t) {
    Json j = Json::object();
    for (const auto& [idx, f] : t.components()) j[t.key_string(idx)] = f.str(t.chart().coords());
    return j;
}

Json first_component(const TensorField& t) {
    if (t.is_zero()) return nullptr;
    const auto& [idx, f] = *t.components().begin();
    return Json{{"component", t.key_string(idx)}, {"value", f.str(t.chart().coords())}};
}

std::string basis_label(const LieFrameSpec& spec, int index) {
    auto [o, i] = spec.locate(index);
    return std::to_string(o + 1) + "." + std::to_string(i);
}

Json serialize(const AnalysisSpec& spec) {
    Json d;
    d["kind"] = kind_name(spec.kind);
    if (spec.chart) d["chart"] = spec.chart->coords();
    if (spec.tensor) {
        if (spec.kind == Kind::form) d["degree"] = spec.tensor->degree();
        if (spec.rank) d["rank"] = *spec.rank;
        d["components"] = components_json(*spec.tensor);
    }
    if (spec.algebra) {
        const auto& alg = *spec.algebra;
        std::vector<std::string> names = spec.chart ? spec.chart->coords() : std::vector<std::string>{};
        d["orbits"] = alg.orbits();
        if (!spec.frame.empty()) {
            Json fr = Json::array();
            for (const auto& v : spec.frame) {
                Json row = Json::array();
                for (const auto& f : v.as_vector()) row.push_back(f.str(names));
                fr.push_back(row);
            }
            d["frame"] = fr;
        } else {
            Json br = Json::array();
            for (const auto& [xy, value] : alg.table()) {
                Json val = Json::object();
                for (std::size_t k = 0; k < value.size(); ++k)
                    if (!value[k].is_zero()) val[basis_label(alg, static_cast<int>(k))] = value[k].str(names);
                if (val.empty()) continue;
                br.push_back(Json{{"left", basis_label(alg, xy.first)}, {"right", basis_label(alg, xy.second)}, {"value", val}});
            }
            d["brackets"] = br;
        }
    }
    if (spec.construction) {
        const auto& c = *spec.construction;
        d["construction"] = c.name;
        if (!c.parameters.empty()) {
            Json p = Json::object();
            for (const auto& [k, v] : c.parameters) p[k] = v;
            d["parameters"] = p;
        }
        if (c.name == "affine-tangent") {
            Json gens = Json::array();
            for (const auto& v : c.generators) {
                Json row = Json::array();
                for (const auto& f : v.as_vector()) row.push_back(f.str(spec.chart->coords()));
                gens.push_back(row);
            }
            d["generators"] = gens;
        }
        if (c.name == "product-extension") {
            d["g_leaf"] = field_matrix_json(c.g_leaf, *spec.chart);
            d["theta_leaf"] = field_matrix_json(c.theta_leaf, *spec.chart);
            auto s = static_cast<std::size_t>(c.parameters.at("leaf_dim"));
            Json gam = Json::object();
            for (std::size_t k = 0; k < s; ++k)
                for (std::size_t i = 0; i < s; ++i)
                    for (std::size_t j = 0; j < s; ++j) {
                        const auto& f = c.gamma_leaf[(k * s + i) * s + j];
                        if (!f.is_zero())
                            gam[std::to_string(k + 1) + ";" + std::to_string(i + 1) + "," + std::to_string(j + 1)] =
                                f.str(spec.chart->coords());
                    }
            d["gamma_leaf"] = gam;
        }
    }
    if (!spec.samples.empty()) {
        Json pts = Json::array();
        for (const auto& p : spec.samples) pts.push_back(point_json(p));
        d["sample_points"] = pts;
    }
    if (spec.metric || spec.verbosity != 0) {
        Json opt = Json::object();
        if (spec.metric) opt["metric"] = rational_matrix_json(*spec.metric);
        if (spec.verbosity != 0) opt["verbosity"] = spec.verbosity;
        d["options"] = opt;
    }
    return d;
}

}  // namespace nij::report
