#include <algorithm>

#include "doctest.h"
#include "gen.hpp"
#include "nij/bivector.hpp"
#include "nij/constructions.hpp"
#include "nij/differential.hpp"
#include "nij/distribution.hpp"
#include "nij/error.hpp"
#include "nij/expression.hpp"
#include "nij/frame.hpp"
#include "nij/hodge.hpp"
#include "nij/linalg.hpp"
#include "nij/nijenhuis.hpp"
#include "nij/projection.hpp"
#include "oracles.hpp"

using namespace nij;

namespace {

ScalarField s(const Chart& c, const char* text) { return parse_scalar(text, c.coords()); }
TensorField d(const Chart& c, int i) { return TensorField::coordinate_field(c, i); }

TensorField sym02(const Chart& c, const std::vector<std::vector<const char*>>& rows) {
    Matrix<ScalarField> m(c.dim(), c.dim(), c.zero());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = s(c, rows[i][j]);
    return TensorField::bilinear(c, m, false, Symmetry::symmetric);
}

int sample_rank(const TensorField& t) { return static_cast<int>(generic_rank(t.as_matrix())); }

}  // namespace

TEST_CASE("N' examples") {
    Chart c = Chart::standard(3);
    auto samples = default_samples(3);
    CHECK(n_prime(sym02(c, {{"1"}}), 1, samples).vanishes());
    std::vector<ScalarField> theta{c.zero(), s(c, "-x1"), c.constant(Rational(1))};
    auto contact = n_prime(gen::outer(c, theta, theta, false), 1, samples);
    CHECK_FALSE(contact.vanishes());
    Chart c2 = Chart::standard(2);
    CHECK(n_prime(sym02(c2, {{"1"}}), 1, default_samples(2)).vanishes());
    CHECK_THROWS_AS(n_prime(sym02(c, {{"1"}}), 2, samples), RankError);
}

TEST_CASE("N'' examples") {
    Chart c = Chart::standard(3);
    auto samples = default_samples(3);
    CHECK(n_double_prime(sym02(c, {{"1"}, {"0", "1"}}), 2, samples).vanishes());
    CHECK_FALSE(n_double_prime(sym02(c, {{"1"}, {"0", "1 + x3^2"}}), 2, samples).vanishes());
    CHECK(n_double_prime(sym02(c, {{"1"}, {"0", "x1"}}), 2, samples).vanishes());
}


TEST_CASE("N'' flag is independent of the trivialization") {
    gen::Rng rng(101);
    Chart c = Chart::standard(3);
    auto samples = default_samples(3);
    int vanishing = 0, total = 0;
    for (int t = 0; t < 100; ++t) {
        auto fm = gen::foliated_metric(rng, c);
        if (sample_rank(fm.g) != fm.r) continue;
        bool base = n_double_prime(fm.g, fm.r, samples).vanishes();
        ++total;
        vanishing += base ? 1 : 0;
        Matrix<ScalarField> frame = adapted_trivialization(fm.g, fm.r);
        std::size_t a = static_cast<std::size_t>(rng.integer(0, 2));
        ScalarField phi = c.constant(Rational(rng.integer(1, 3))) + c.coordinate(static_cast<std::size_t>(rng.integer(0, 2))) *
                                                                     c.coordinate(static_cast<std::size_t>(rng.integer(0, 2)));
        for (std::size_t i = 0; i < 3; ++i) frame(i, a) = phi * frame(i, a);
        CHECK(n_double_prime(fm.g, fm.r, samples, frame).vanishes() == base);
    }
    CHECK(total >= 90);
    CHECK(vanishing > 10);
    CHECK(total - vanishing > 10);
}

TEST_CASE("N'' matches projectability when the kernel is integrable") {
    gen::Rng rng(103);
    Chart c = Chart::standard(3);
    auto samples = default_samples(3);
    for (int t = 0; t < 40; ++t) {
        auto fm = gen::foliated_metric(rng, c);
        if (sample_rank(fm.g) != fm.r) continue;
        auto kernel = kernel_fields(c, fm.g.as_matrix());
        REQUIRE(distribution_integrability(VectorFieldSpan(c, kernel, kernel.size(), samples)).integrable);
        REQUIRE(n_prime(fm.g, fm.r, samples).vanishes());
        bool projectable = true;
        for (const auto& v : kernel) projectable = projectable && lie_derivative_02(v, fm.g).is_zero();
        CHECK(n_double_prime(fm.g, fm.r, samples).vanishes() == projectable);
    }
}

TEST_CASE("N'' rejects a frame without kernel sections") {
    Chart c = Chart::standard(3);
    std::vector<ScalarField> theta{c.constant(Rational(1)), c.coordinate(2), c.zero()};
    TensorField g = gen::outer(c, theta, theta, false);
    Matrix<ScalarField> coords = lift_matrix(c, Matrix<Rational>::identity(3));
    CHECK_THROWS_AS(n_double_prime(g, 1, default_samples(3), coords), InputError);
    CHECK_NOTHROW(n_double_prime(g, 1, default_samples(3)));
}

TEST_CASE("N-tilde examples") {
    Chart c2 = Chart::standard(2);
    auto id = lift_matrix(c2, Matrix<Rational>::identity(2));
    CHECK(n_tilde(MorphismField(c2, id, 2, default_samples(2))).vanishes());
    Chart c = Chart::standard(3);
    std::vector<ScalarField> theta{c.zero(), s(c, "-x1"), c.constant(Rational(1))};
    Matrix<ScalarField> rows(3, 3, c.zero());
    for (std::size_t v = 0; v < 3; ++v)
        for (std::size_t k = 0; k < 3; ++k) rows(v, k) = theta[v] * theta[k];
    CHECK_FALSE(n_tilde(MorphismField(c, rows, 1, default_samples(3))).vanishes());
    Matrix<ScalarField> plane(3, 3, c.zero());
    plane(0, 0) = c.constant(Rational(1));
    plane(1, 1) = c.constant(Rational(1));
    CHECK(n_tilde(MorphismField(c, plane, 2, default_samples(3))).vanishes());
}

TEST_CASE("kernel family examples") {
    Chart c = Chart::standard(3);
    TensorField j21 = TensorField::endomorphism(c, lift_matrix(c, jordan_matrix(JordanProfile::parse("2 1"))));
    for (const auto& k : kernel_nijenhuis_family(j21, Matrix<Rational>::identity(3), default_samples(3))) {
        CHECK(k.family.vanishes());
        CHECK(k.kernel_integrable);
    }
    auto real = realize_on_chart(build_prop81(1, 1, 2));
    auto fam = kernel_nijenhuis_family(real.theta, Matrix<Rational>::identity(4), default_samples(4));
    REQUIRE_FALSE(fam.empty());
    CHECK(fam.front().power == 1);
    CHECK_FALSE(fam.front().family.vanishes());
    CHECK_FALSE(fam.front().kernel_integrable);
    Chart base = Chart::standard(2);
    auto tangent = build_affine_tangent(VectorFieldSpan(base, {}, 0, default_samples(2)));
    CHECK(tangent.profile == std::optional<JordanProfile>(JordanProfile::parse("2 2")));
    for (const auto& k : kernel_nijenhuis_family(tangent.theta, Matrix<Rational>::identity(4), default_samples(4)))
        CHECK(k.family.vanishes());
    CHECK_THROWS_AS(kernel_nijenhuis_family(identity_endomorphism(c), Matrix<Rational>::identity(3), default_samples(3)),
                    PreconditionError);
}

TEST_CASE("hodge star examples") {
    Chart c = Chart::standard(4);
    RiemannianBackground bg(c);
    TensorField e12 = wedge_vectors({d(c, 0), d(c, 1)});
    TensorField e34 = wedge_vectors({d(c, 2), d(c, 3)});
    CHECK(hodge_star_rational(e12, bg) == e34);
    CHECK(hodge_star_rational(hodge_star_rational(e12, bg), bg) == e12);
    CHECK(hodge_star_rational(d(c, 0), bg) == wedge_vectors({d(c, 1), d(c, 2), d(c, 3)}));
    CHECK_THROWS_AS(RiemannianBackground(c, Matrix<Rational>(4, 4)), InputError);
}

TEST_CASE("hodge star squares to the expected sign") {
    gen::Rng rng(111);
    for (int t = 0; t < 100; ++t) {
        int n = rng.integer(2, 5);
        int r = rng.integer(1, n - 1);
        Chart c = Chart::standard(static_cast<std::size_t>(n));
        RiemannianBackground bg(c);
        TensorField p = zero_multivector(c, r);
        for (int k = 0; k < 3; ++k) {
            std::vector<TensorField> vs;
            for (int i = 0; i < r; ++i) vs.push_back(rng.vector_field(c, 1));
            p += wedge_vectors(vs);
        }
        int sign = (r * (n - r)) % 2 == 0 ? 1 : -1;
        TensorField twice = hodge_star_rational(hodge_star_rational(p, bg), bg);
        CHECK(twice == (sign > 0 ? p : -p));
    }
}

TEST_CASE("contraction of a decomposable r-vector with itself is a multiple of the projection") {
    Chart c3 = Chart::standard(3);
    RiemannianBackground bg3(c3);
    TensorField e12 = wedge_vectors({d(c3, 0), d(c3, 1)});
    Matrix<ScalarField> proj(3, 3, c3.zero());
    proj(0, 0) = c3.constant(Rational(1));
    proj(1, 1) = c3.constant(Rational(1));
    CHECK(contraction(e12, e12, bg3).as_matrix() == proj);
    CHECK(oracle::contraction(e12, e12, Matrix<Rational>::identity(3)) == proj);

    gen::Rng rng(121);
    for (int t = 0; t < 100; ++t) {
        int n = rng.integer(2, 5);
        int r = rng.integer(1, std::min(3, n));
        Chart c = Chart::standard(static_cast<std::size_t>(n));
        RiemannianBackground bg(c);
        Matrix<Rational> v = rng.rational_matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(r));
        if (rank(v) < static_cast<std::size_t>(r)) continue;
        std::vector<TensorField> vs;
        for (int a = 0; a < r; ++a) {
            std::vector<ScalarField> comp;
            for (int i = 0; i < n; ++i) comp.push_back(c.constant(v(static_cast<std::size_t>(i), static_cast<std::size_t>(a))));
            vs.push_back(TensorField::vector_field(c, comp));
        }
        TensorField w = wedge_vectors(vs);
        Matrix<ScalarField> beta = contraction(w, w, bg).as_matrix();
        CHECK(beta == oracle::contraction(w, w, Matrix<Rational>::identity(static_cast<std::size_t>(n))));
        // Multiple (r-1)! det(V^T V) of P = V (V^T V)^{-1} V^T.
        Matrix<Rational> gram = v.transpose() * v;
        Rational lambda = determinant(gram);
        for (int k = 2; k < r; ++k) lambda *= Rational(k);
        Matrix<Rational> p = v * inverse(gram) * v.transpose();
        CHECK(beta == lift_matrix(c, p).map([&](const ScalarField& x) { return ScalarField(lambda) * x; }));
        CHECK_FALSE(lambda.is_zero());
    }
}

TEST_CASE("contraction under a non-Euclidean metric matches the oracle") {
    gen::Rng rng(131);
    Chart c = Chart::standard(3);
    Matrix<Rational> g(3, 3);
    g(0, 0) = Rational(2);
    g(1, 1) = Rational(3);
    g(2, 2) = Rational(1);
    g(0, 1) = g(1, 0) = Rational(1);
    RiemannianBackground bg(c, g);
    for (int t = 0; t < 20; ++t) {
        TensorField a = wedge_vectors({rng.vector_field(c, 1), rng.vector_field(c, 1)});
        TensorField b = wedge_vectors({rng.vector_field(c, 1), rng.vector_field(c, 1)});
        CHECK(contraction(a, b, bg).as_matrix() == oracle::contraction(a, b, g));
    }
}

TEST_CASE("N-hat examples") {
    Chart c = Chart::standard(3);
    auto samples = default_samples(3);
    RiemannianBackground bg(c);
    std::vector<ScalarField> e1{c.constant(Rational(1)), c.zero(), c.zero()};
    std::vector<ScalarField> e2{c.zero(), c.constant(Rational(1)), c.zero()};
    std::vector<ScalarField> w{c.zero(), c.constant(Rational(1)), s(c, "x1")};
    auto flat = n_hat(gen::outer(c, e1, e1, true) + gen::outer(c, e2, e2, true), 2, bg, samples);
    CHECK(flat.vanishes());
    CHECK(flat.image_integrable);
    auto bent = n_hat(gen::outer(c, e1, e1, true) + gen::outer(c, w, w, true), 2, bg, samples);
    CHECK_FALSE(bent.vanishes());
    CHECK_FALSE(bent.image_integrable);
    TensorField biv = wedge_vectors({d(c, 0), d(c, 1)});
    CHECK(n_hat(biv, 2, bg, samples).vanishes());
}

TEST_CASE("inverse of a non-closed symplectic form") {
    Chart c = Chart::standard(4);
    auto samples = default_samples(4);
    TensorField omega = basis_form(c, {0, 1}) + s(c, "1 + x1") * basis_form(c, {2, 3});
    CHECK(exterior_derivative(omega) == basis_form(c, {0, 2, 3}));
    Matrix<ScalarField> theta_m = inverse(omega.as_matrix());
    TensorField theta = TensorField::bilinear(c, theta_m, true, Symmetry::antisymmetric);
    auto nh = n_hat(theta, 4, RiemannianBackground(c), samples);
    CHECK(nh.vanishes());
    CHECK(nh.image_integrable);
    auto res = restriction_inverse(theta, 4, samples);
    REQUIRE(res.leafwise_closed.has_value());
    CHECK_FALSE(*res.leafwise_closed);
    REQUIRE(res.closedness_value.has_value());
}

TEST_CASE("restriction examples") {
    Chart c = Chart::standard(3);
    auto samples = default_samples(3);
    TensorField biv = wedge_vectors({d(c, 0), d(c, 1)});
    auto res = restriction_inverse(biv, 2, samples);
    CHECK(res.pivots == std::vector<int>{0, 1});
    REQUIRE(res.leafwise_closed.has_value());
    CHECK(*res.leafwise_closed);
    // omega(w_0, w_1) with w_0 = -d_2, w_1 = d_1 gives omega(d_1, d_2) = 1.
    CHECK(res.basis[0] == -d(c, 1));
    CHECK(res.basis[1] == d(c, 0));
    CHECK(res.inverse(0, 1) == ScalarField(1));
    std::vector<ScalarField> e1{c.constant(Rational(1)), c.zero(), c.zero()};
    auto sym = restriction_inverse(gen::outer(c, e1, e1, true), 1, samples);
    CHECK(sym.restriction(0, 0) == ScalarField(1));
    CHECK(sym.inverse(0, 0) == ScalarField(1));
    CHECK_FALSE(sym.leafwise_closed.has_value());
}

TEST_CASE("restriction inverts on the image") {
    gen::Rng rng(141);
    Chart c = Chart::standard(3);
    auto samples = default_samples(3);
    for (int t = 0; t < 20; ++t) {
        std::vector<ScalarField> a{c.constant(Rational(1)), rng.poly_field(3, 1, 2), c.zero()};
        std::vector<ScalarField> b{c.zero(), c.constant(Rational(1)), rng.poly_field(3, 1, 2)};
        TensorField theta = gen::outer(c, a, a, true) + gen::outer(c, b, b, true);
        if (sample_rank(theta) != 2) continue;
        auto res = restriction_inverse(theta, 2, samples);
        // Theta = sum_{kl} restriction^{kl} w_k w_l.
        Matrix<ScalarField> rebuilt(3, 3, c.zero());
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t l = 0; l < 2; ++l)
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        rebuilt(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) +=
                            res.restriction(k, l) * res.basis[k].get({i}) * res.basis[l].get({j});
        CHECK(rebuilt == theta.as_matrix());
        CHECK(res.restriction * res.inverse.transpose() == lift_matrix(c, Matrix<Rational>::identity(2)));
    }
}

TEST_CASE("connection projection examples") {
    Chart c = Chart::standard(2);
    Matrix<ScalarField> j0(2, 2, c.zero());
    j0(0, 1) = c.constant(Rational(-1));
    j0(1, 0) = c.constant(Rational(1));
    auto flat = diagonalizable_connection_projection(TensorField::endomorphism(c, j0), Rational(-1), ConnectionCoefficients(c));
    CHECK(flat.b.is_zero());
    CHECK(flat.hat_parallel);

    Matrix<ScalarField> j1(2, 2, c.zero());
    j1(0, 1) = s(c, "-(1 + x1^2)");
    j1(1, 0) = s(c, "1/(1 + x1^2)");
    auto bent = diagonalizable_connection_projection(TensorField::endomorphism(c, j1), Rational(-1), ConnectionCoefficients(c));
    CHECK(bent.nijenhuis_vanishes);
    CHECK(bent.b_symmetric);
    CHECK(bent.hat_torsion_free);
    CHECK(bent.hat_parallel);

    gen::Rng rng(151);
    Matrix<ScalarField> para(2, 2, c.zero());
    para(0, 0) = c.constant(Rational(1));
    para(1, 1) = c.constant(Rational(-1));
    auto p = diagonalizable_connection_projection(TensorField::endomorphism(c, para), Rational(1), rng.torsion_free(c, 1));
    CHECK(p.hat_parallel);
    CHECK(p.hat_torsion_free);

    CHECK_THROWS_AS(diagonalizable_connection_projection(TensorField::endomorphism(c, para), Rational(-1), ConnectionCoefficients(c)),
                    InputError);
}

TEST_CASE("connection projection symmetry tracks the Nijenhuis tensor") {
    // J = diag(1, -1, 1) twisted so that the eigen-distribution span{d_1, d_3 + x1 d_2}
    // is non-integrable: N != 0 and B is not symmetric.
    Chart c = Chart::standard(3);
    Matrix<ScalarField> f(3, 3, c.zero());
    for (std::size_t i = 0; i < 3; ++i) f(i, i) = c.constant(Rational(1));
    f(1, 2) = c.coordinate(0);
    Matrix<ScalarField> dmat(3, 3, c.zero());
    dmat(0, 0) = c.constant(Rational(1));
    dmat(1, 1) = c.constant(Rational(-1));
    dmat(2, 2) = c.constant(Rational(1));
    TensorField j = TensorField::endomorphism(c, f * dmat * inverse(f));
    auto res = diagonalizable_connection_projection(j, Rational(1), ConnectionCoefficients(c));
    CHECK_FALSE(res.nijenhuis_vanishes);
    CHECK_FALSE(res.b_symmetric);
}


TEST_CASE("closure properties of a Nijenhuis-free nilpotent endomorphism") {
    gen::Rng rng(161);
    int cases = 0;
    for (int t = 0; t < 100; ++t) {
        Chart c = Chart::standard(static_cast<std::size_t>(rng.integer(2, 4)));
        auto samples = default_samples(c.dim());
        TensorField theta = gen::straightened_nilpotent(rng, c);
        REQUIRE(nijenhuis_11(theta).is_zero());
        ++cases;
        int i = rng.integer(1, 2), j = rng.integer(1, 2);
        TensorField ti = power(theta, i), tj = power(theta, j), tij = power(theta, i + j);

        // Images of Theta^i are closed under brackets.
        std::vector<TensorField> image;
        for (std::size_t a = 0; a < c.dim(); ++a) {
            TensorField col = apply(ti, TensorField::coordinate_field(c, static_cast<int>(a)));
            if (!col.is_zero()) image.push_back(col);
        }
        if (!image.empty()) {
            auto span = VectorFieldSpan::with_generic_rank(c, image, samples);
            for (std::size_t a = 0; a < image.size(); ++a)
                for (std::size_t b = a + 1; b < image.size(); ++b) CHECK(span_membership(lie_bracket(image[a], image[b]), span));
        }

        // [Ker Theta^i, Ker Theta^j] lies in Ker Theta^{i+j}.
        auto ki = kernel_fields(c, ti.as_matrix());
        auto kj = kernel_fields(c, tj.as_matrix());
        for (const auto& v : ki)
            for (const auto& w : kj) CHECK(apply(tij, lie_bracket(v, w)).is_zero());

        // Theta^i v = 0 forces Theta^i (Theta^j [v,w] - [v, Theta^j w]) = 0.
        TensorField w = rng.vector_field(c, 1);
        for (const auto& v : ki)
            CHECK(apply(ti, apply(tj, lie_bracket(v, w)) - lie_bracket(v, apply(tj, w))).is_zero());
    }
    CHECK(cases == 100);
}
