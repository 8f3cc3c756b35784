#include "doctest.h"
#include "gen.hpp"
#include "nij/constructions.hpp"
#include "nij/differential.hpp"
#include "nij/error.hpp"
#include "nij/expression.hpp"
#include "nij/linalg.hpp"
#include "nij/nijenhuis.hpp"
#include "oracles.hpp"

using namespace nij;

namespace {

ScalarField s(const Chart& c, const char* text) { return parse_scalar(text, c.coords()); }

TensorField vf(const Chart& c, std::vector<const char*> comps) {
    std::vector<ScalarField> v;
    for (const char* t : comps) v.push_back(s(c, t));
    return TensorField::vector_field(c, v);
}

std::string twos_then_ones(std::size_t twos, std::size_t ones) {
    std::string out;
    for (std::size_t i = 0; i < twos + ones; ++i) out += (out.empty() ? "" : " ") + std::string(i < twos ? "2" : "1");
    return out;
}

void check_affine_tangent(const VectorFieldSpan& d) {
    auto res = build_affine_tangent(d);
    std::size_t c = d.chart().dim() - d.rank();
    CHECK(res.corank == c);
    CHECK(res.chart.dim() == d.chart().dim() + c);
    CHECK(res.theta_squared_zero);
    CHECK(res.nijenhuis_zero);
    CHECK(nijenhuis_11(res.theta).is_zero());
    CHECK(res.profile == std::optional<JordanProfile>(JordanProfile::parse(twos_then_ones(c, d.rank()))));
    CHECK(res.kernel_integrable == res.distribution_integrable);
    CHECK(res.distribution_integrable == distribution_integrability(d).integrable);
    CHECK(res.fiber_translations_commute);
    // Rows of the annihilator kill every generator.
    for (const auto& v : d.generators()) {
        auto comps = v.as_vector();
        for (std::size_t mu = 0; mu < c; ++mu) {
            ScalarField x = d.chart().zero();
            for (std::size_t a = 0; a < comps.size(); ++a) x += res.annihilator(mu, a) * comps[a];
            CHECK(x.is_zero());
        }
    }
}

}  // namespace

TEST_CASE("affine tangent examples") {
    Chart c2 = Chart::standard(2);
    auto line = build_affine_tangent(VectorFieldSpan(c2, {vf(c2, {"1", "0"})}, 1, default_samples(2)));
    CHECK(line.chart.dim() == 3);
    CHECK(line.chart.coords() == std::vector<std::string>{"x1", "x2", "t1"});
    Matrix<ScalarField> expect(3, 3, line.chart.zero());
    expect(2, 1) = line.chart.constant(Rational(1));
    CHECK(line.theta.as_matrix() == expect);
    CHECK(line.kernel_integrable);
    CHECK(line.profile == std::optional<JordanProfile>(JordanProfile::parse("2 1")));

    Chart c3 = Chart::standard(3);
    auto contact = build_affine_tangent(VectorFieldSpan(c3, {vf(c3, {"1", "0", "0"}), vf(c3, {"0", "1", "x1"})}, 2, default_samples(3)));
    CHECK(contact.chart.dim() == 4);
    CHECK(contact.nijenhuis_zero);
    CHECK_FALSE(contact.kernel_integrable);
    CHECK(contact.kernel_witness.has_value());
    CHECK_FALSE(contact.distribution_integrable);

    auto tangent = build_affine_tangent(VectorFieldSpan(c2, {}, 0, default_samples(2)));
    CHECK(tangent.profile == std::optional<JordanProfile>(JordanProfile::parse("2 2")));
    CHECK(compose(tangent.theta, tangent.theta).is_zero());
    VectorFieldSpan image(tangent.chart, {apply(tangent.theta, TensorField::coordinate_field(tangent.chart, 0)),
                                          apply(tangent.theta, TensorField::coordinate_field(tangent.chart, 1))},
                          2, default_samples(4));
    for (const auto& k : kernel_fields(tangent.chart, tangent.theta.as_matrix())) CHECK(span_membership(k, image));

    Chart named({"t1", "y"});
    auto clash = build_affine_tangent(VectorFieldSpan(named, {vf(named, {"1", "0"})}, 1, default_samples(2)));
    CHECK(clash.chart.coords() == std::vector<std::string>{"t1", "y", "tt1"});
}

TEST_CASE("affine tangent verdict follows the distribution") {
    gen::Rng rng(301);
    Chart c = Chart::standard(3);
    int integrable = 0, total = 0;
    for (int t = 0; t < 30; ++t) {
        int kind = rng.integer(0, 2);
        std::vector<TensorField> gens;
        if (kind == 0) {
            // Ker(dx3 - dF) with F polynomial: integrable.
            ScalarField fz = c.coordinate(0) * c.coordinate(1) * ScalarField(Rational(rng.integer(-2, 2))) +
                             c.coordinate(0) * c.coordinate(0) * ScalarField(Rational(rng.integer(-2, 2))) + c.coordinate(1);
            gens = {TensorField::vector_field(c, {c.constant(Rational(1)), c.zero(), fz.derivative(0)}),
                    TensorField::vector_field(c, {c.zero(), c.constant(Rational(1)), fz.derivative(1)})};
        } else if (kind == 1) {
            gens = {TensorField::vector_field(c, {c.constant(Rational(1)), c.zero(), rng.poly_field(3, 2, 3)}),
                    TensorField::vector_field(c, {c.zero(), c.constant(Rational(1)), rng.poly_field(3, 2, 3)})};
        } else {
            gens = {TensorField::vector_field(c, {c.constant(Rational(1)), rng.poly_field(3, 1, 2), rng.poly_field(3, 1, 2)})};
        }
        VectorFieldSpan d(c, gens, gens.size(), default_samples(3));
        check_affine_tangent(d);
        ++total;
        integrable += distribution_integrability(d).integrable ? 1 : 0;
    }
    CHECK(integrable >= 5);
    CHECK(total - integrable >= 5);
}

TEST_CASE("affine tangent rejects a rank drop") {
    Chart c = Chart::standard(2);
    // x1 d_1 spans a line away from x1 = 0 only.
    std::vector<Point> samples{{Rational(0), Rational(1)}};
    CHECK_THROWS_AS(build_affine_tangent(VectorFieldSpan(c, {vf(c, {"x1", "0"})}, 1, samples)), RankError);
}

TEST_CASE("form counterexample") {
    for (auto [n, q] : std::vector<std::pair<int, int>>{{5, 3}, {6, 3}, {6, 4}, {7, 5}}) {
        auto res = build_nin_form(n, q, default_samples(static_cast<std::size_t>(n)));
        CHECK(res.zeta.lower() == q);
        CHECK(res.closed);
        CHECK(exterior_derivative(res.zeta).is_zero());
        CHECK(res.fco.size() == static_cast<std::size_t>(q - 2));
        for (bool a : res.annihilates) CHECK(a);
        CHECK(res.witness_nonzero);
        CHECK_FALSE(res.kernel_integrable);
        CHECK(res.kernel_witness.has_value());
        CHECK(res.normal_form_at_samples);
    }
    auto five = build_nin_form(5, 3, default_samples(5));
    const Chart& c = five.chart;
    TensorField sigma = basis_form(c, {0, 1}) + basis_form(c, {2, 3});
    TensorField eta = basis_form(c, {4}) + c.coordinate(0) * basis_form(c, {1}) - c.coordinate(2) * basis_form(c, {3});
    CHECK(five.zeta == wedge(sigma, eta));
    CHECK(five.eta == eta);
    auto six = build_nin_form(6, 4, default_samples(6));
    CHECK(six.witness == wedge(wedge(exterior_derivative(six.eta), six.eta), basis_form(six.chart, {5})));
    CHECK_THROWS_AS(build_nin_form(4, 3, {}), InputError);
    CHECK_THROWS_AS(build_nin_form(6, 2, {}), InputError);
    CHECK_THROWS_AS(build_nin_form(6, 5, {}), InputError);
}

TEST_CASE("product extension examples") {
    Chart c = Chart::standard(3);
    auto lift = [&](std::vector<std::vector<const char*>> rows) {
        Matrix<ScalarField> m(rows.size(), rows.size(), c.zero());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = s(c, rows[i][j]);
        return m;
    };
    std::vector<ScalarField> flat(8, c.zero());
    auto e = product_extension(c, 2, lift({{"1", "0"}, {"0", "1"}}), lift({{"1", "0"}, {"0", "1"}}), flat);
    CHECK(e.g_parallel);
    CHECK(e.theta_parallel);
    CHECK_FALSE(e.transverse_dependence);
    CHECK(e.g.as_matrix()(2, 2).is_zero());

    // diag(1, x1^2) with its Levi-Civita coefficients from the oracle.
    Matrix<ScalarField> g = lift({{"1", "0"}, {"0", "x1^2"}});
    Chart leaf = Chart::standard(2);
    Matrix<ScalarField> gl(2, 2, leaf.zero());
    gl(0, 0) = leaf.constant(Rational(1));
    gl(1, 1) = parse_scalar("x1^2", leaf.coords());
    auto gamma2 = oracle::levi_civita(gl);
    std::vector<ScalarField> gamma;
    for (const auto& x : gamma2) gamma.push_back(embed(x, 3));
    CHECK(gamma[(1 * 2 + 0) * 2 + 1] == s(c, "1/x1"));
    CHECK(gamma[(0 * 2 + 1) * 2 + 1] == s(c, "-x1"));
    auto curved = product_extension(c, 2, g, inverse(g), gamma);
    CHECK(curved.g_parallel);
    CHECK(curved.theta_parallel);

    // Transverse dependence keeps the leafwise identities but breaks parallelism along x3.
    Matrix<ScalarField> gh = g.map([&](const ScalarField& x) { return s(c, "1 + x3^2") * x; });
    auto bent = product_extension(c, 2, gh, inverse(gh), gamma);
    CHECK(bent.transverse_dependence);
    CHECK_FALSE(bent.g_parallel);

    auto perturbed = gamma;
    perturbed[(1 * 2 + 0) * 2 + 1] = s(c, "2/x1");
    perturbed[(1 * 2 + 1) * 2 + 0] = s(c, "2/x1");
    try {
        product_extension(c, 2, g, inverse(g), perturbed);
        FAIL("expected rejection");
    } catch (const PreconditionError& err) {
        CHECK(std::string(err.what()).find("(i,j,k) = (") != std::string::npos);
    }
    auto twisted = gamma;
    twisted[(0 * 2 + 0) * 2 + 1] = c.constant(Rational(1));
    CHECK_THROWS_AS(product_extension(c, 2, g, inverse(g), twisted), InputError);
    CHECK_THROWS_AS(product_extension(c, 2, g, inverse(g), std::vector<ScalarField>(3, c.zero())), InputError);
}

TEST_CASE("product extension of random flat leaf data is parallel") {
    gen::Rng rng(311);
    Chart c = Chart::standard(4);
    for (int t = 0; t < 20; ++t) {
        std::size_t s_dim = static_cast<std::size_t>(rng.integer(1, 3));
        Matrix<Rational> a = rng.unimodular(s_dim, 3);
        Matrix<ScalarField> g = lift_matrix(c, a.transpose() * a);
        Matrix<ScalarField> theta = lift_matrix(c, rng.rational_matrix(s_dim, s_dim));
        std::vector<ScalarField> gamma(s_dim * s_dim * s_dim, c.zero());
        auto e = product_extension(c, static_cast<int>(s_dim), g, theta, gamma);
        CHECK(e.g_parallel);
        CHECK(e.theta_parallel);
    }
}
