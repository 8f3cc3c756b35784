#include "nij/constructions.hpp"

#include "nij/differential.hpp"
#include "nij/error.hpp"
#include "nij/linalg.hpp"
#include "nij/nijenhuis.hpp"

namespace nij {

ScalarField embed(const ScalarField& f, std::size_t nvars) {
    return ScalarField(f.num().promoted(nvars), f.den().promoted(nvars));
}

namespace {

std::string fresh_prefix(const Chart& base, const std::string& want, std::size_t count) {
    std::string prefix = want;
    for (;;) {
        bool clash = false;
        for (std::size_t m = 1; m <= count && !clash; ++m) clash = base.index_of(prefix + std::to_string(m)).has_value();
        if (!clash) return prefix;
        prefix += want;
    }
}

}  // namespace

AffineTangentResult build_affine_tangent(const VectorFieldSpan& d) {
    const Chart& base = d.chart();
    std::size_t s = base.dim();
    std::size_t c = s - d.rank();
    AffineTangentResult res;
    res.corank = c;

    Matrix<ScalarField> ann(c, s, base.zero());
    if (d.generators().empty()) {
        for (std::size_t a = 0; a < s; ++a) ann(a, a) = base.constant(Rational(1));
    } else {
        auto null = nullspace(d.matrix());
        if (null.size() != c) throw RankError("annihilator has unexpected rank");
        for (std::size_t mu = 0; mu < c; ++mu) {
            auto row = clear_denominators(null[mu]);
            for (std::size_t a = 0; a < s; ++a) ann(mu, a) = row[a];
        }
    }
    for (std::size_t i = 0; i < d.samples().size(); ++i)
        if (rank_at(ann, d.samples()[i]) != c)
            throw RankError("annihilator rank drops at sample " + std::to_string(i + 1));
    res.annihilator = ann;

    std::vector<std::string> names = base.coords();
    std::string prefix = fresh_prefix(base, "t", c);
    for (std::size_t mu = 1; mu <= c; ++mu) names.push_back(prefix + std::to_string(mu));
    res.chart = Chart(names);
    std::size_t n = s + c;

    Matrix<ScalarField> tm(n, n, res.chart.zero());
    for (std::size_t mu = 0; mu < c; ++mu)
        for (std::size_t a = 0; a < s; ++a) tm(s + mu, a) = embed(ann(mu, a), n);
    res.theta = TensorField::endomorphism(res.chart, tm);

    std::vector<Point> samples;
    for (std::size_t i = 0; i < d.samples().size(); ++i) {
        Point p = d.samples()[i];
        for (std::size_t mu = 0; mu < c; ++mu) p.emplace_back(static_cast<long>(mu + i + 1), 3);
        samples.push_back(std::move(p));
    }

    res.theta_squared_zero = compose(res.theta, res.theta).is_zero();
    res.nijenhuis_zero = nijenhuis_11(res.theta).is_zero();
    res.profile = field_profile(res.theta, samples);
    res.distribution_integrable = distribution_integrability(d).integrable;
    VectorFieldSpan kernel(res.chart, kernel_fields(res.chart, tm), n - c, samples);
    auto integ = distribution_integrability(kernel);
    res.kernel_integrable = integ.integrable;
    res.kernel_witness = integ.witness;

    res.fiber_translations_commute = true;
    std::vector<TensorField> images;
    for (std::size_t a = 0; a < s; ++a)
        images.push_back(apply(res.theta, TensorField::coordinate_field(res.chart, static_cast<int>(a))));
    for (std::size_t a = 0; a < s; ++a)
        for (std::size_t b = a + 1; b < s; ++b)
            if (!lie_bracket(images[a], images[b]).is_zero()) res.fiber_translations_commute = false;
    return res;
}

NinFormResult build_nin_form(int n, int q, const std::vector<Point>& samples) {
    if (n < 5 || q < 3 || q > n - 2) throw InputError("form construction requires n >= 5 and 3 <= q <= n - 2");
    NinFormResult res;
    res.chart = Chart::standard(static_cast<std::size_t>(n), "x");
    const Chart& ch = res.chart;
    res.eta = basis_form(ch, {4}) + ch.coordinate(0) * basis_form(ch, {1}) - ch.coordinate(2) * basis_form(ch, {3});
    TensorField sigma = basis_form(ch, {0, 1}) + basis_form(ch, {2, 3});
    TensorField tail = function_form(ch, ch.constant(Rational(1)));
    res.fco.push_back(res.eta);
    for (int a = 5; a < q + 2; ++a) {
        res.fco.push_back(basis_form(ch, {a}));
        tail = wedge(tail, basis_form(ch, {a}));
    }
    res.zeta = wedge(wedge(sigma, res.eta), tail);
    res.witness = wedge(wedge(exterior_derivative(res.eta), res.eta), tail);

    res.closed = exterior_derivative(res.zeta).is_zero();
    for (const auto& xi : res.fco) res.annihilates.push_back(wedge(xi, res.zeta).is_zero());
    res.witness_nonzero = !res.witness.is_zero();

    Matrix<ScalarField> rows(res.fco.size(), static_cast<std::size_t>(n), ch.zero());
    for (std::size_t f = 0; f < res.fco.size(); ++f) {
        auto v = res.fco[f].as_vector();
        for (std::size_t a = 0; a < v.size(); ++a) rows(f, a) = v[a];
    }
    VectorFieldSpan kernel(ch, kernel_fields(ch, rows), static_cast<std::size_t>(n) - res.fco.size(), samples);
    auto integ = distribution_integrability(kernel);
    res.kernel_integrable = integ.integrable;
    res.kernel_witness = integ.witness;

    res.normal_form_at_samples = !samples.empty();
    for (const auto& p : samples) {
        NumericTensor eta_p = evaluate_at_point(res.eta, p);
        std::vector<ScalarField> xi5(static_cast<std::size_t>(n), ch.zero());
        Matrix<Rational> coframe = Matrix<Rational>::identity(static_cast<std::size_t>(n));
        for (const auto& [idx, v] : eta_p.comps) {
            xi5[static_cast<std::size_t>(idx[0])] = ch.constant(v);
            coframe(4, static_cast<std::size_t>(idx[0])) = v;
        }
        TensorField normal = wedge(wedge(sigma, TensorField::one_form(ch, xi5)), tail);
        bool ok = !determinant(coframe).is_zero() && evaluate_at_point(res.zeta, p).comps == evaluate_at_point(normal, p).comps;
        res.normal_form_at_samples = res.normal_form_at_samples && ok;
    }
    return res;
}

ProductExtension product_extension(const Chart& chart, int s, const Matrix<ScalarField>& g_leaf,
                                   const Matrix<ScalarField>& theta_leaf, const std::vector<ScalarField>& gamma_leaf) {
    int n = static_cast<int>(chart.dim());
    if (s < 1 || s > n) throw InputError("leaf dimension out of range");
    auto su = static_cast<std::size_t>(s);
    if (g_leaf.rows() != su || g_leaf.cols() != su || theta_leaf.rows() != su || theta_leaf.cols() != su)
        throw InputError("leaf matrices must be s x s");
    if (gamma_leaf.size() != su * su * su) throw InputError("leaf connection must have s^3 entries");
    auto gam = [&](int k, int i, int j) -> const ScalarField& {
        return gamma_leaf[(static_cast<std::size_t>(k) * su + static_cast<std::size_t>(i)) * su + static_cast<std::size_t>(j)];
    };
    auto at = [](const Matrix<ScalarField>& m, int i, int j) -> const ScalarField& {
        return m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    };
    for (int k = 0; k < s; ++k)
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j)
                if (!(gam(k, i, j) == gam(k, j, i))) throw InputError("leaf connection has torsion");
    auto tag = [](int i, int j, int k) {
        return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
    };
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            for (int k = 0; k < s; ++k) {
                ScalarField rg = at(g_leaf, j, k).derivative(static_cast<std::size_t>(i));
                ScalarField rt = at(theta_leaf, j, k).derivative(static_cast<std::size_t>(i));
                for (int l = 0; l < s; ++l) {
                    rg -= gam(l, i, j) * at(g_leaf, l, k) + gam(l, i, k) * at(g_leaf, j, l);
                    rt += gam(j, i, l) * at(theta_leaf, l, k) + gam(k, i, l) * at(theta_leaf, j, l);
                }
                if (!rg.is_zero()) throw PreconditionError("leafwise parallelism of g fails at (i,j,k) = " + tag(i, j, k));
                if (!rt.is_zero()) throw PreconditionError("leafwise parallelism of Theta fails at (i,j,k) = " + tag(i, j, k));
            }

    auto nu = static_cast<std::size_t>(n);
    Matrix<ScalarField> g(nu, nu, chart.zero()), t(nu, nu, chart.zero());
    std::vector<ScalarField> gamma(nu * nu * nu, chart.zero());
    ProductExtension out;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            g(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = at(g_leaf, i, j);
            t(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = at(theta_leaf, i, j);
            for (int k = 0; k < s; ++k)
                gamma[(static_cast<std::size_t>(k) * nu + static_cast<std::size_t>(i)) * nu + static_cast<std::size_t>(j)] = gam(k, i, j);
            for (int a = s; a < n; ++a) {
                bool dep = !at(g_leaf, i, j).derivative(static_cast<std::size_t>(a)).is_zero() ||
                           !at(theta_leaf, i, j).derivative(static_cast<std::size_t>(a)).is_zero();
                for (int k = 0; k < s; ++k) dep = dep || !gam(k, i, j).derivative(static_cast<std::size_t>(a)).is_zero();
                out.transverse_dependence = out.transverse_dependence || dep;
            }
        }
    out.g = TensorField::bilinear(chart, g, false, Symmetry::symmetric);
    out.theta = TensorField::bilinear(chart, t, true, Symmetry::none);
    out.nabla = ConnectionCoefficients::torsion_free(chart, std::move(gamma));
    out.nabla_g = covariant_derivative(out.g, out.nabla);
    out.nabla_theta = covariant_derivative(out.theta, out.nabla);
    out.g_parallel = out.nabla_g.is_zero();
    out.theta_parallel = out.nabla_theta.is_zero();
    return out;
}

}  // namespace nij
