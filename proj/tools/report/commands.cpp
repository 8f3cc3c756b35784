#include "report/commands.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <sstream>

#include "nij/bivector.hpp"
#include "nij/constructions.hpp"
#include "nij/differential.hpp"
#include "nij/distribution.hpp"
#include "nij/hodge.hpp"
#include "nij/linalg.hpp"
#include "nij/nijenhuis.hpp"

namespace nij::report {

namespace {

Json holds(const std::string& criterion) { return Json{{"criterion", criterion}, {"status", "holds"}}; }

Json fails(const std::string& criterion, Json witness) {
    return Json{{"criterion", criterion}, {"status", "fails"}, {"witness", std::move(witness)}};
}

Json not_applicable(const std::string& criterion, const std::string& reason) {
    return Json{{"criterion", criterion}, {"status", "not-applicable"}, {"reason", reason}};
}

Json flag(bool ok, const std::string& criterion, const std::function<Json()>& witness) {
    return ok ? holds(criterion) : fails(criterion, witness());
}

Json index_list(const std::vector<int>& idx) {
    Json j = Json::array();
    for (int i : idx) j.push_back(i + 1);
    return j;
}

Json component_witness(const TensorField& t, const std::string& name) {
    Json w = first_component(t);
    if (w.is_null()) return w;
    Json out{{"type", "component"}, {"tensor", name}};
    out.update(w);
    return out;
}

Json bracket_witness(const BracketWitness& w, const std::vector<TensorField>& gens) {
    return Json{{"type", "bracket"},
                {"generators", {w.i + 1, w.j + 1}},
                {"fields", {components_json(gens[w.i]), components_json(gens[w.j])}},
                {"bracket", components_json(w.bracket)}};
}

Json form_witness(const FormComponent& c, const std::string& name) {
    Json out{{"type", "component"}, {"tensor", name}, {"arguments", index_list(c.head)}, {"tuple", index_list(c.tuple)}};
    out.update(first_component(c.value));
    return out;
}

Json frame_witness(const FrameWitness& w, const LieFrameSpec& spec) {
    const auto& names = spec.chart() ? spec.chart()->coords() : std::vector<std::string>{};
    return Json{{"type", "E-coefficient"},
                {"orbits", {w.a + 1, w.b + 1, w.c + 1}},
                {"i", w.i},
                {"j", w.j},
                {"k", w.k},
                {"s", w.s()},
                {"value", w.residual.str(names)}};
}

Json family_json(const FormFamily& fam, const std::string& name) {
    return Json{{"vanishes", fam.vanishes()},
                {"nonzero_count", fam.nonzero.size()},
                {"witness", fam.vanishes() ? Json(nullptr) : form_witness(fam.nonzero.front(), name)}};
}

std::string conclusion(const Json& verdict) {
    const std::string& s = verdict["status"].get_ref<const std::string&>();
    if (s == "holds") return "integrable";
    if (s == "fails") return "not integrable";
    return "undetermined";
}

struct Integrability {
    std::vector<TensorField> generators;
    IntegrabilityResult result;
    Json witness() const { return result.witness ? bracket_witness(*result.witness, generators) : Json(nullptr); }
};

Integrability kernel_integrability(const Chart& ch, const Matrix<ScalarField>& m, const std::vector<Point>& samples) {
    Integrability out;
    out.generators = kernel_fields(ch, m);
    out.result = distribution_integrability(VectorFieldSpan::with_generic_rank(ch, out.generators, samples));
    return out;
}

Integrability image_integrability(const Chart& ch, const Matrix<ScalarField>& m, const std::vector<Point>& samples) {
    Integrability out;
    out.generators = column_fields(ch, m);
    out.result = distribution_integrability(VectorFieldSpan::with_generic_rank(ch, out.generators, samples));
    return out;
}

Json counterexample_witness(const JordanProfile& profile) {
    LieFrameSpec alg = build_prop81_embedded(profile);
    int l = profile.shortest();
    AnalysisSpec doc;
    doc.kind = Kind::lie_algebra;
    doc.algebra = alg;
    Json w{{"type", "counterexample algebra"}, {"kernel_power", l}, {"algebra", serialize(doc)}};
    auto fw = kernel_integrability_frame(alg, l).witness;
    w["frame_witness"] = fw ? frame_witness(*fw, alg) : Json(nullptr);
    return w;
}

Json control_verdict(const JordanProfile& profile) {
    const std::string crit = "Jordan type controlled by N (all blocks but the last of equal length)";
    return csd(profile) ? holds(crit) : fails(crit, counterexample_witness(profile));
}

Json analyze_11(const AnalysisSpec& spec) {
    const TensorField& th = *spec.tensor;
    const Chart& ch = th.chart();
    std::size_t n = ch.dim();
    Json inv{{"dimension", n}};
    Json ranks = Json::array();
    TensorField pw = th;
    for (std::size_t k = 1; k <= n; ++k) {
        std::size_t r = generic_rank(pw.as_matrix());
        ranks.push_back(r);
        if (r == 0) break;
        pw = compose(pw, th);
    }
    inv["power_ranks"] = ranks;
    auto profile = field_profile(th, spec.samples);
    inv["nilpotent"] = profile.has_value();
    inv["profile"] = profile ? Json(profile->str()) : Json(nullptr);
    inv["csd"] = profile ? Json(csd(*profile)) : Json(nullptr);

    TensorField nij = nijenhuis_11(th);
    Json tensors;
    tensors["N"] = Json{{"vanishes", nij.is_zero()}, {"witness", component_witness(nij, "N")}};
    Json verdicts = Json::array();
    verdicts.push_back(flag(nij.is_zero(), "N vanishes", [&] { return component_witness(nij, "N"); }));

    Json main;
    if (profile) {
        Matrix<Rational> metric = spec.metric.value_or(Matrix<Rational>::identity(n));
        auto family = kernel_nijenhuis_family(th, metric, spec.samples);
        Json kernels = Json::array();
        Json first_bad;
        for (const auto& k : family) {
            auto integ = kernel_integrability(ch, power(th, k.power).as_matrix(), spec.samples);
            Json e{{"power", k.power},
                   {"rank", k.rank},
                   {"integrable", integ.result.integrable},
                   {"n_tilde_vanishes", k.family.vanishes()},
                   {"agree", k.family.vanishes() == integ.result.integrable},
                   {"witness", integ.witness()}};
            if (!integ.result.integrable && first_bad.is_null()) {
                first_bad = integ.witness();
                first_bad["kernel_power"] = k.power;
            }
            verdicts.push_back(flag(integ.result.integrable, "Ker Theta^" + std::to_string(k.power) + " integrable",
                                    [&] { return integ.witness(); }));
            kernels.push_back(e);
        }
        tensors["kernel_family"] = kernels;
        const std::string crit = "integrability (nilpotent): N = 0 and every Ker Theta^i integrable";
        if (!nij.is_zero()) main = fails(crit, component_witness(nij, "N"));
        else if (!first_bad.is_null()) main = fails(crit, first_bad);
        else main = holds(crit);
        verdicts.push_back(control_verdict(*profile));
    } else {
        const std::string crit = "integrability (complex-diagonalizable): N = 0";
        bool diag = true;
        for (const auto& p : spec.samples) diag = diag && complex_diagonalizable(evaluate_matrix(th.as_matrix(), p));
        bool constant = true;
        Json traces = Json::array();
        pw = th;
        for (std::size_t k = 1; k <= n; ++k) {
            Matrix<ScalarField> m = pw.as_matrix();
            ScalarField tr = ch.zero();
            for (std::size_t a = 0; a < n; ++a) tr += m(a, a);
            constant = constant && tr.is_constant();
            traces.push_back(tr.str(ch.coords()));
            pw = compose(pw, th);
        }
        inv["complex_diagonalizable_at_samples"] = diag;
        inv["power_traces"] = traces;
        inv["constant_eigenvalues"] = constant;
        if (!diag) main = not_applicable(crit, "neither nilpotent nor complex-diagonalizable at every sample");
        else if (!constant) main = not_applicable(crit, "eigenvalues are not constant (traces of powers vary)");
        else main = flag(nij.is_zero(), crit, [&] { return component_witness(nij, "N"); });
    }
    verdicts.push_back(main);
    return Json{{"invariants", inv}, {"tensors", tensors}, {"verdicts", verdicts}, {"conclusion", conclusion(main)}};
}

Json analyze_form(const AnalysisSpec& spec) {
    const TensorField& z = *spec.tensor;
    const Chart& ch = z.chart();
    int n = static_cast<int>(ch.dim());
    int q = z.degree();
    TensorField dz = exterior_derivative(z);
    Json inv{{"dimension", n}, {"degree", q}, {"closed", dz.is_zero()}};

    std::optional<bool> constant;
    if (q == 0) {
        constant = true;
    } else if (q == 2) {
        constant = rank_profile(z.as_matrix(), spec.samples).constant();
    } else if (q == 1 || q == n - 1 || q == n) {
        Matrix<ScalarField> row(1, std::max<std::size_t>(1, z.components().size()), ch.zero());
        std::size_t c = 0;
        for (const auto& [idx, f] : z.components()) row(0, c++) = f;
        constant = rank_profile(row, spec.samples).constant();
    }
    inv["algebraically_constant"] = constant ? Json(*constant) : Json(nullptr);
    Json tensors;
    tensors["d"] = Json{{"vanishes", dz.is_zero()}, {"witness", component_witness(dz, "d")}};

    Json verdicts = Json::array();
    verdicts.push_back(flag(dz.is_zero(), "closed (necessary for integrability)", [&] { return component_witness(dz, "d"); }));
    const std::string crit = "integrability: closed and algebraically constant in degree 0, 1, 2, n-1 or n";
    Json main;
    if (!dz.is_zero()) main = fails(crit, component_witness(dz, "d"));
    else if (!constant) main = not_applicable(crit, "closedness is necessary but not sufficient in degree " + std::to_string(q));
    else if (!*constant) main = not_applicable(crit, "the form is not algebraically constant at the samples");
    else main = holds(crit);
    verdicts.push_back(main);
    return Json{{"invariants", inv}, {"tensors", tensors}, {"verdicts", verdicts}, {"conclusion", conclusion(main)}};
}

Json analyze_sym02(const AnalysisSpec& spec) {
    const TensorField& g = *spec.tensor;
    const Chart& ch = g.chart();
    int r = *spec.rank;
    auto np = n_prime(g, r, spec.samples);
    auto npp = n_double_prime(g, r, spec.samples);
    Json inv{{"dimension", ch.dim()}, {"rank", r}};
    Json tensors{{"N'", family_json(np, "N'")}, {"N''", family_json(npp, "N''")}};

    Json cross;
    try {
        auto kern = kernel_integrability(ch, g.as_matrix(), spec.samples);
        cross["kernel_integrable"] = kern.result.integrable;
        cross["kernel_witness"] = kern.witness();
        cross["agrees_with_N'"] = kern.result.integrable == np.vanishes();
        Json proj = nullptr, proj_witness = nullptr;
        if (kern.result.integrable) {
            proj = true;
            for (std::size_t a = 0; a < kern.generators.size() && proj.get<bool>(); ++a) {
                TensorField lg = lie_derivative_02(kern.generators[a], g);
                if (!lg.is_zero()) {
                    proj = false;
                    proj_witness = component_witness(lg, "L_v g");
                    proj_witness["generator"] = components_json(kern.generators[a]);
                }
            }
        }
        cross["projectable"] = proj;
        cross["projectability_witness"] = proj_witness;
        cross["agrees_with_N''"] = proj.is_null() ? Json(nullptr) : Json(proj.get<bool>() == npp.vanishes());
    } catch (const RankError& e) {
        cross = Json{{"unavailable", e.what()}};
    }

    Json verdicts = Json::array();
    verdicts.push_back(flag(np.vanishes(), "Ker g integrable (N' = 0)", [&] { return form_witness(np.nonzero.front(), "N'"); }));
    verdicts.push_back(flag(npp.vanishes(), "g projectable along Ker g (N'' = 0)",
                            [&] { return form_witness(npp.nonzero.front(), "N''"); }));
    const std::string crit = "integrability: N' = 0 and N'' = 0";
    Json main;
    if (!np.vanishes()) main = fails(crit, form_witness(np.nonzero.front(), "N'"));
    else if (!npp.vanishes()) main = fails(crit, form_witness(npp.nonzero.front(), "N''"));
    else main = holds(crit);
    verdicts.push_back(main);
    return Json{{"invariants", inv}, {"tensors", tensors}, {"cross_check", cross}, {"verdicts", verdicts},
                {"conclusion", conclusion(main)}};
}

Json nhat_witness(const NHatComponent& c) {
    return Json{{"type", "component"},        {"tensor", "N-hat"},
                {"xi", c.xi + 1},             {"xi_tuple", index_list(c.xi_tuple)},
                {"eta", c.eta + 1},           {"eta_tuple", index_list(c.eta_tuple)},
                {"value", components_json(c.value)}};
}

Json analyze_contravariant(const AnalysisSpec& spec) {
    const TensorField& th = *spec.tensor;
    const Chart& ch = th.chart();
    int r = *spec.rank;
    bool bivector = spec.kind == Kind::bivector;
    RiemannianBackground bg = spec.metric ? RiemannianBackground(ch, *spec.metric) : RiemannianBackground(ch);
    NHatResult nh = n_hat(th, r, bg, spec.samples);
    auto image = image_integrability(ch, th.as_matrix(), spec.samples);
    bool im = image.result.integrable;

    Json inv{{"dimension", ch.dim()}, {"rank", r}};
    Json tensors;
    tensors["N-hat"] = Json{{"vanishes", nh.vanishes()},
                            {"nonzero_count", nh.nonzero.size()},
                            {"witness", nh.vanishes() ? Json(nullptr) : nhat_witness(nh.nonzero.front())}};
    Json cross{{"image_integrable", im}, {"image_witness", image.witness()}, {"agrees_with_N-hat", im == nh.vanishes()}};

    Json verdicts = Json::array();
    Json nv = flag(nh.vanishes(), "N-hat vanishes", [&] { return nhat_witness(nh.nonzero.front()); });
    if (bivector && nh.vanishes()) nv["label"] = "necessary condition holds; sufficiency requires leafwise closedness";
    verdicts.push_back(nv);
    verdicts.push_back(flag(im, "Im Theta integrable", [&] { return image.witness(); }));

    Json main;
    if (!bivector) {
        main = flag(im, "integrability (symmetric): Im Theta integrable", [&] { return image.witness(); });
    } else {
        RestrictionResult res = restriction_inverse(th, r, spec.samples);
        Json leaf;
        const std::string lc = "inverse on Im Theta closed along each leaf";
        Json closed_witness = nullptr;
        if (res.closedness_witness) {
            const auto& t = *res.closedness_witness;
            closed_witness = Json{{"type", "component"},
                                  {"tensor", "leafwise d(omega)"},
                                  {"basis_triple", {t[0] + 1, t[1] + 1, t[2] + 1}},
                                  {"basis", {components_json(res.basis[static_cast<std::size_t>(t[0])]),
                                             components_json(res.basis[static_cast<std::size_t>(t[1])]),
                                             components_json(res.basis[static_cast<std::size_t>(t[2])])}},
                                  {"value", res.closedness_value ? Json(res.closedness_value->str(ch.coords())) : Json(nullptr)}};
        }
        if (!im) leaf = not_applicable(lc, "Im Theta is not integrable");
        else leaf = flag(res.leafwise_closed.value_or(true), lc, [&] { return closed_witness; });
        verdicts.push_back(leaf);
        inv["image_pivots"] = index_list(res.pivots);
        inv["leafwise_closed"] = res.leafwise_closed ? Json(*res.leafwise_closed) : Json(nullptr);
        tensors["restriction_inverse"] = field_matrix_json(res.inverse, ch);
        const std::string crit = "integrability (bivector): Im Theta integrable and its inverse leafwise closed";
        if (!im) main = fails(crit, image.witness());
        else if (!res.leafwise_closed.value_or(true)) main = fails(crit, closed_witness);
        else main = holds(crit);
    }
    verdicts.push_back(main);
    return Json{{"invariants", inv}, {"tensors", tensors}, {"cross_check", cross}, {"verdicts", verdicts},
                {"conclusion", conclusion(main)}};
}

// Checks of a (1,1) tensor on a chart against the frame computation.
Json realization_json(const TensorField& theta, const std::vector<Point>& samples, const FrameCheck& frame_n,
                      const LieFrameSpec& alg) {
    const Chart& ch = theta.chart();
    TensorField nij = nijenhuis_11(theta);
    Json kernels = Json::array();
    bool agree = nij.is_zero() == frame_n.holds;
    int longest = alg.orbits().front();
    for (int l = 1; l < longest; ++l) {
        auto integ = kernel_integrability(ch, power(theta, l).as_matrix(), samples);
        bool fr = kernel_integrability_frame(alg, l).holds;
        agree = agree && fr == integ.result.integrable;
        kernels.push_back(Json{{"power", l},
                               {"integrable", integ.result.integrable},
                               {"agrees_with_frame", fr == integ.result.integrable},
                               {"witness", integ.witness()}});
    }
    return Json{{"chart", ch.coords()},
                {"theta", components_json(theta)},
                {"N_vanishes", nij.is_zero()},
                {"N_witness", component_witness(nij, "N")},
                {"agrees_with_frame_N", nij.is_zero() == frame_n.holds},
                {"kernels", kernels},
                {"agrees", agree}};
}

Json lie_check(const AnalysisSpec& spec) {
    const LieFrameSpec& alg = *spec.algebra;
    bool constant = alg.constant_coefficients();
    Json inv{{"dimension", alg.dim()}, {"orbits", alg.orbits()}, {"constant_coefficients", constant}};
    std::optional<bool> jacobi;
    if (constant) {
        jacobi = jacobi_check(alg);
        auto lcs = lower_central_series(alg);
        inv["jacobi"] = *jacobi;
        inv["lower_central_series"] = lcs;
        bool nilpotent = lcs.back() == 0;
        inv["nilpotent"] = nilpotent;
        inv["step"] = nilpotent ? Json(lcs.size() - 1) : Json(nullptr);
    } else {
        inv["jacobi"] = nullptr;
        inv["lower_central_series"] = nullptr;
    }
    const auto& names = alg.chart() ? alg.chart()->coords() : std::vector<std::string>{};
    Json etable = Json::array();
    for (const auto& [key, v] : reindex_c_e(alg)) {
        auto [a, b, c, i, j, s] = key;
        etable.push_back(Json{{"orbits", {a + 1, b + 1, c + 1}}, {"i", i}, {"j", j}, {"s", s}, {"value", v.str(names)}});
    }

    FrameCheck fn = frame_nijenhuis_vanishes(alg);
    FrameCheck all = kernel_integrability_all(alg);
    Json verdicts = Json::array();
    verdicts.push_back(flag(fn.holds, "frame N vanishes", [&] { return frame_witness(*fn.witness, alg); }));
    Json kernels = Json::array();
    for (int l = 1; l < alg.orbits().front(); ++l) {
        FrameCheck k = kernel_integrability_frame(alg, l);
        kernels.push_back(Json{{"power", l}, {"integrable", k.holds}, {"witness", k.witness ? frame_witness(*k.witness, alg) : Json(nullptr)}});
        verdicts.push_back(flag(k.holds, "Ker Theta^" + std::to_string(l) + " integrable", [&] { return frame_witness(*k.witness, alg); }));
    }
    const std::string crit = "integrability (nilpotent): N = 0 and every Ker Theta^l integrable";
    Json main;
    if (!fn.holds) main = fails(crit, frame_witness(*fn.witness, alg));
    else if (!all.holds) main = fails(crit, frame_witness(*all.witness, alg));
    else main = holds(crit);
    verdicts.push_back(control_verdict(JordanProfile(alg.orbits())));
    verdicts.push_back(main);

    Json real;
    if (!spec.frame.empty()) {
        std::vector<Point> samples = spec.samples.empty() ? default_samples(spec.chart->dim()) : spec.samples;
        real = realization_json(theta_from_frame(alg.orbits(), spec.frame), samples, fn, alg);
        real["source"] = "explicit frame";
    } else if (!constant) {
        real = Json{{"unavailable", "function coefficients without an explicit frame"}};
    } else if (!*jacobi) {
        real = Json{{"unavailable", "the Jacobi identity fails"}};
    } else {
        Realization rz = realize_on_chart(alg);
        std::vector<Point> samples = default_samples(rz.chart.dim());
        real = realization_json(rz.theta, samples, fn, alg);
        real["source"] = "left-invariant realization";
    }
    Json tensors{{"frame_N", Json{{"vanishes", fn.holds}, {"witness", fn.witness ? frame_witness(*fn.witness, alg) : Json(nullptr)}}},
                 {"kernels", kernels},
                 {"E_table", etable}};
    return Json{{"invariants", inv}, {"tensors", tensors}, {"realization", real}, {"verdicts", verdicts},
                {"conclusion", conclusion(main)}};
}

Json construct_prop81(const ConstructionSpec& c) {
    int p = c.parameters.at("p");
    LieFrameSpec alg = build_prop81(p, c.parameters.at("q"), c.parameters.at("r"));
    AnalysisSpec doc;
    doc.kind = Kind::lie_algebra;
    doc.algebra = alg;
    FrameCheck fn = frame_nijenhuis_vanishes(alg);
    FrameCheck kp = kernel_integrability_frame(alg, p);
    Json verdicts = Json::array();
    bool jac = jacobi_check(alg);
    verdicts.push_back(flag(jac, "Jacobi identity", [] { return Json{{"type", "Jacobi sum"}}; }));
    verdicts.push_back(flag(fn.holds, "frame N vanishes", [&] { return frame_witness(*fn.witness, alg); }));
    Json kv = flag(kp.holds, "Ker Theta^" + std::to_string(p) + " integrable", [&] { return frame_witness(*kp.witness, alg); });
    verdicts.push_back(kv);
    Realization rz = realize_on_chart(alg);
    Json real = realization_json(rz.theta, default_samples(rz.chart.dim()), fn, alg);
    return Json{{"document", serialize(doc)}, {"realization", real}, {"verdicts", verdicts}, {"conclusion", conclusion(kv)}};
}

Json construct_nin_form(const ConstructionSpec& c, const std::vector<Point>& samples) {
    NinFormResult res = build_nin_form(c.parameters.at("n"), c.parameters.at("q"), samples);
    AnalysisSpec doc;
    doc.kind = Kind::form;
    doc.chart = res.chart;
    doc.tensor = res.zeta;
    doc.samples = samples;
    Json ann = Json::array();
    for (bool b : res.annihilates) ann.push_back(b);
    Json fco = Json::array();
    for (const auto& xi : res.fco) fco.push_back(components_json(xi));
    Json verdicts = Json::array();
    verdicts.push_back(flag(res.closed, "closed", [&] { return component_witness(exterior_derivative(res.zeta), "d"); }));
    verdicts.push_back(flag(std::all_of(res.annihilates.begin(), res.annihilates.end(), [](bool b) { return b; }),
                            "every listed 1-form annihilates the form", [] { return Json{{"type", "wedge"}}; }));
    verdicts.push_back(flag(res.normal_form_at_samples, "pointwise normal form at every sample",
                            [] { return Json{{"type", "sample"}}; }));
    std::vector<TensorField> gens;
    Json kw = nullptr;
    if (res.kernel_witness) {
        Matrix<ScalarField> rows(res.fco.size(), res.chart.dim(), res.chart.zero());
        for (std::size_t f = 0; f < res.fco.size(); ++f) {
            auto v = res.fco[f].as_vector();
            for (std::size_t a = 0; a < v.size(); ++a) rows(f, a) = v[a];
        }
        kw = bracket_witness(*res.kernel_witness, kernel_fields(res.chart, rows));
    }
    Json main = flag(res.kernel_integrable, "integrability: kernel of the listed 1-forms integrable", [&] { return kw; });
    verdicts.push_back(main);
    return Json{{"document", serialize(doc)},
                {"auxiliary", Json{{"eta", components_json(res.eta)},
                                   {"one_forms", fco},
                                   {"annihilates", ann},
                                   {"witness_form", components_json(res.witness)},
                                   {"witness_nonzero", res.witness_nonzero}}},
                {"verdicts", verdicts},
                {"conclusion", conclusion(main)}};
}

Json construct_affine_tangent(const AnalysisSpec& spec) {
    const auto& c = *spec.construction;
    auto span = VectorFieldSpan::with_generic_rank(*spec.chart, c.generators, spec.samples);
    AffineTangentResult res = build_affine_tangent(span);
    AnalysisSpec doc;
    doc.kind = Kind::tensor11;
    doc.chart = res.chart;
    doc.tensor = res.theta;
    for (std::size_t i = 0; i < spec.samples.size(); ++i) {
        Point p = spec.samples[i];
        for (std::size_t mu = 0; mu < res.corank; ++mu) p.emplace_back(static_cast<long>(mu + i + 1), 3);
        doc.samples.push_back(std::move(p));
    }
    Json checks{{"corank", res.corank},
                {"annihilator", field_matrix_json(res.annihilator, *spec.chart)},
                {"theta_squared_zero", res.theta_squared_zero},
                {"N_vanishes", res.nijenhuis_zero},
                {"profile", res.profile ? Json(res.profile->str()) : Json(nullptr)},
                {"distribution_integrable", res.distribution_integrable},
                {"kernel_integrable", res.kernel_integrable},
                {"fiber_translations_commute", res.fiber_translations_commute}};
    Json verdicts = Json::array();
    verdicts.push_back(flag(res.distribution_integrable == res.kernel_integrable,
                            "Ker Theta integrable exactly when the distribution is", [] { return Json{{"type", "mismatch"}}; }));
    Json kw = nullptr;
    if (res.kernel_witness)
        kw = bracket_witness(*res.kernel_witness, kernel_fields(res.chart, res.theta.as_matrix()));
    const std::string crit = "integrability: N = 0 and Ker Theta integrable";
    Json main;
    if (!res.nijenhuis_zero) main = fails(crit, component_witness(nijenhuis_11(res.theta), "N"));
    else main = flag(res.kernel_integrable, crit, [&] { return kw; });
    verdicts.push_back(main);
    return Json{{"document", serialize(doc)}, {"checks", checks}, {"verdicts", verdicts}, {"conclusion", conclusion(main)}};
}

Json construct_product_extension(const AnalysisSpec& spec) {
    const auto& c = *spec.construction;
    const Chart& ch = *spec.chart;
    ProductExtension res = product_extension(ch, c.parameters.at("leaf_dim"), c.g_leaf, c.theta_leaf, c.gamma_leaf);
    std::size_t n = ch.dim();
    Json gamma = Json::object();
    for (int k = 0; k < static_cast<int>(n); ++k)
        for (int i = 0; i < static_cast<int>(n); ++i)
            for (int j = 0; j < static_cast<int>(n); ++j)
                if (!res.nabla(k, i, j).is_zero())
                    gamma[std::to_string(k + 1) + ";" + std::to_string(i + 1) + "," + std::to_string(j + 1)] =
                        res.nabla(k, i, j).str(ch.coords());
    Json outputs{{"g", components_json(res.g)}, {"theta", components_json(res.theta)}, {"connection", gamma}};
    Json checks{{"g_parallel", res.g_parallel},
                {"theta_parallel", res.theta_parallel},
                {"transverse_dependence", res.transverse_dependence}};
    Json verdicts = Json::array();
    verdicts.push_back(flag(res.g_parallel, "nabla g = 0", [&] { return component_witness(res.nabla_g, "nabla g"); }));
    Json main = flag(res.theta_parallel, "nabla Theta = 0", [&] { return component_witness(res.nabla_theta, "nabla Theta"); });
    verdicts.push_back(main);
    std::string concl = res.g_parallel && res.theta_parallel ? "parallel extension" : "not parallel";
    return Json{{"outputs", outputs}, {"checks", checks}, {"verdicts", verdicts}, {"conclusion", concl}};
}

Json construct(const AnalysisSpec& spec) {
    const auto& c = *spec.construction;
    if (c.name == "prop81") return construct_prop81(c);
    if (c.name == "nin-form") return construct_nin_form(c, spec.samples);
    if (c.name == "affine-tangent") return construct_affine_tangent(spec);
    return construct_product_extension(spec);
}

void require_kind(const AnalysisSpec& spec, const std::string& command, std::initializer_list<Kind> kinds) {
    for (Kind k : kinds)
        if (spec.kind == k) return;
    std::string want;
    for (Kind k : kinds) want += (want.empty() ? "" : " or ") + kind_name(k);
    throw InputError(command + " expects a " + want + " document, got " + kind_name(spec.kind));
}

Json assemble(const std::string& command, Json input, Json body) {
    Json rep{{"command", command}, {"input", std::move(input)}};
    for (auto& [k, v] : body.items()) rep[k] = v;
    return rep;
}

}  // namespace

Json run_command(const std::string& command, const AnalysisSpec& spec) {
    Json body;
    if (command == "analyze-11") {
        require_kind(spec, command, {Kind::tensor11});
        body = analyze_11(spec);
    } else if (command == "analyze-form") {
        require_kind(spec, command, {Kind::form});
        body = analyze_form(spec);
    } else if (command == "analyze-sym02") {
        require_kind(spec, command, {Kind::sym02});
        body = analyze_sym02(spec);
    } else if (command == "analyze-sym20") {
        require_kind(spec, command, {Kind::sym20});
        body = analyze_contravariant(spec);
    } else if (command == "analyze-bivector") {
        require_kind(spec, command, {Kind::bivector});
        body = analyze_contravariant(spec);
    } else if (command == "lie-check") {
        require_kind(spec, command, {Kind::lie_algebra});
        body = lie_check(spec);
    } else if (command == "construct") {
        require_kind(spec, command, {Kind::construction});
        body = construct(spec);
    } else {
        throw InputError("unknown command " + command);
    }
    return assemble(command, serialize(spec), std::move(body));
}

Json verify_controlled(const JordanProfile& profile, int n_cap) {
    ControlledVerdict v = controlled_type_verifier(profile, n_cap);
    Json triples = Json::array();
    for (const auto& t : v.triples)
        triples.push_back(Json{{"orbits", {t.a + 1, t.b + 1, t.c + 1}},
                               {"lengths", {t.p, t.q, t.r}},
                               {"unknowns", t.unknowns},
                               {"nijenhuis_dim", t.nijenhuis_dim},
                               {"nijenhuis_ali_dim", t.nijenhuis_ali_dim},
                               {"contained", t.contained()}});
    Json cert{{"triples", triples},
              {"family_contained", v.family_contained},
              {"total_nijenhuis_dim", v.total_nijenhuis_dim},
              {"total_ali_dim", v.total_ali_dim},
              {"consistent_with_csd", v.consistent}};
    Json verdicts = Json::array();
    Json main = control_verdict(profile);
    verdicts.push_back(main);
    Json body{{"invariants", Json{{"dimension", profile.dim()}, {"profile", profile.str()}, {"csd", v.csd}}},
              {"certificate", cert},
              {"verdicts", verdicts},
              {"conclusion", v.controlled ? "controlled by N" : "not controlled by N"}};
    return assemble("verify-controlled", Json{{"profile", profile.str()}, {"n_cap", n_cap}}, std::move(body));
}

std::string pretty_table(const Json& report) {
    std::ostringstream os;
    std::size_t width = 10;
    Json verdicts = report.contains("verdicts") ? report["verdicts"] : Json::array();
    for (const auto& v : verdicts) width = std::max(width, v["criterion"].get_ref<const std::string&>().size() + 2);
    os << std::left << std::setw(static_cast<int>(width)) << "criterion" << std::setw(16) << "status" << "detail\n";
    os << std::string(width + 30, '-') << '\n';
    for (const auto& v : verdicts) {
        std::string detail;
        if (v.contains("label")) detail = v["label"].get<std::string>();
        else if (v.contains("reason")) detail = v["reason"].get<std::string>();
        else if (v.contains("witness") && v["witness"].is_object() && v["witness"].contains("type"))
            detail = v["witness"]["type"].get<std::string>() + " witness";
        os << std::setw(static_cast<int>(width)) << v["criterion"].get<std::string>() << std::setw(16)
           << v["status"].get<std::string>() << detail << '\n';
    }
    if (report.contains("conclusion")) os << "conclusion: " << report["conclusion"].get<std::string>() << '\n';
    return os.str();
}

Json error_json(const std::exception& e) {
    std::string type = "internal";
    Json violations = Json::array();
    if (const auto* s = dynamic_cast<const SchemaError*>(&e)) {
        type = "schema";
        for (const auto& v : s->violations()) violations.push_back(v);
    } else if (dynamic_cast<const PoleError*>(&e)) {
        type = "pole";
    } else if (dynamic_cast<const RankError*>(&e)) {
        type = "rank";
    } else if (dynamic_cast<const PreconditionError*>(&e)) {
        type = "precondition";
    } else if (dynamic_cast<const InputError*>(&e)) {
        type = "input";
    } else if (dynamic_cast<const UnsupportedError*>(&e)) {
        type = "unsupported";
    }
    Json err{{"type", type}, {"message", e.what()}};
    if (!violations.empty()) err["violations"] = violations;
    return Json{{"error", err}};
}

int exit_code(const std::exception& e) {
    if (dynamic_cast<const InputError*>(&e)) return 2;
    if (dynamic_cast<const UnsupportedError*>(&e)) return 3;
    return 1;
}

}  // namespace nij::report
