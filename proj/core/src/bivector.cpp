#include "nij/bivector.hpp"

#include "nij/differential.hpp"
#include "nij/error.hpp"
#include "nij/linalg.hpp"
#include "nij/nijenhuis.hpp"

namespace nij {

namespace {

// Coordinates a of X in the basis: X[c] = P a with P_{ak} = w_k^{c_a}.
std::vector<ScalarField> coefficients(const Matrix<ScalarField>& p_inv, const std::vector<int>& pivots,
                                      const TensorField& x) {
    std::size_t r = pivots.size();
    std::vector<ScalarField> out(r, x.chart().zero());
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t a = 0; a < r; ++a) {
            ScalarField xa = x.get({pivots[a]});
            if (!xa.is_zero() && !p_inv(k, a).is_zero()) out[k] += p_inv(k, a) * xa;
        }
    return out;
}

ScalarField omega_on(const Matrix<ScalarField>& omega, const std::vector<ScalarField>& x, std::size_t l) {
    ScalarField s;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (!x[k].is_zero() && !omega(k, l).is_zero()) s += x[k] * omega(k, l);
    return s;
}

Matrix<ScalarField> pivot_block(const std::vector<TensorField>& basis, const std::vector<int>& pivots) {
    std::size_t r = pivots.size();
    Matrix<ScalarField> p(r, r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t k = 0; k < r; ++k) p(a, k) = basis[k].get({pivots[a]});
    return p;
}

}  // namespace

ScalarField leafwise_d(const std::vector<TensorField>& basis, const Matrix<ScalarField>& omega,
                       const std::vector<int>& pivots, int a, int b, int c) {
    Matrix<ScalarField> p_inv = inverse(pivot_block(basis, pivots));
    auto w = [&](int i) -> const TensorField& { return basis[static_cast<std::size_t>(i)]; };
    auto om = [&](int i, int j) { return omega(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
    ScalarField total = directional(w(a), om(b, c)) + directional(w(b), om(c, a)) + directional(w(c), om(a, b));
    const int cyc[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
    for (const auto& t : cyc) {
        auto coeff = coefficients(p_inv, pivots, lie_bracket(w(t[0]), w(t[1])));
        total -= omega_on(omega, coeff, static_cast<std::size_t>(t[2]));
    }
    return total;
}

RestrictionResult restriction_inverse(const TensorField& theta, int r, const std::vector<Point>& samples) {
    if (theta.upper() != 2 || theta.lower() != 0) throw InputError("restriction requires a (2,0) tensor");
    const Chart& chart = theta.chart();
    Matrix<ScalarField> tm = theta.as_matrix();
    bool symmetric = true, antisymmetric = true;
    for (std::size_t i = 0; i < tm.rows(); ++i)
        for (std::size_t j = 0; j < tm.cols(); ++j) {
            symmetric = symmetric && tm(i, j) == tm(j, i);
            antisymmetric = antisymmetric && tm(i, j) == -tm(j, i);
        }
    if (!symmetric && !antisymmetric) throw InputError("restriction requires a symmetric or antisymmetric tensor");
    require_rank(tm, r, samples, "restriction");

    RestrictionResult res;
    Matrix<ScalarField> echelon = tm;
    for (auto c : rref(echelon)) res.pivots.push_back(static_cast<int>(c));
    auto columns = column_fields(chart, tm);
    for (int c : res.pivots) res.basis.push_back(columns[static_cast<std::size_t>(c)]);
    std::size_t rr = res.pivots.size();
    Matrix<ScalarField> s(rr, rr);
    for (std::size_t a = 0; a < rr; ++a)
        for (std::size_t b = 0; b < rr; ++b)
            s(a, b) = tm(static_cast<std::size_t>(res.pivots[a]), static_cast<std::size_t>(res.pivots[b]));
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (determinant(evaluate_matrix(s, samples[i])).is_zero())
            throw RankError("restriction is singular at sample " + std::to_string(i + 1));
    res.restriction = inverse(s.transpose());
    res.inverse = s;

    VectorFieldSpan image(chart, res.basis, rr, samples);
    auto integ = distribution_integrability(image);
    res.image_integrable = integ.integrable;
    res.image_witness = integ.witness;
    if (symmetric && !antisymmetric) return res;
    if (!res.image_integrable) return res;
    res.leafwise_closed = true;
    for (int a = 0; a < static_cast<int>(rr); ++a)
        for (int b = a + 1; b < static_cast<int>(rr); ++b)
            for (int c = b + 1; c < static_cast<int>(rr); ++c) {
                ScalarField v = leafwise_d(res.basis, res.inverse, res.pivots, a, b, c);
                if (!v.is_zero()) {
                    res.leafwise_closed = false;
                    res.closedness_witness = std::array<int, 3>{a, b, c};
                    res.closedness_value = v;
                    return res;
                }
            }
    return res;
}

}  // namespace nij
