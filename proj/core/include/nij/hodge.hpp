#pragma once

#include <optional>
#include <vector>

#include "nij/distribution.hpp"
#include "nij/tensor.hpp"

namespace nij {

/// Constant positive-definite metric on a chart; Euclidean by default.
class RiemannianBackground {
public:
    explicit RiemannianBackground(Chart chart);
    /// Throws InputError unless the matrix is symmetric with positive leading principal minors.
    RiemannianBackground(Chart chart, Matrix<Rational> metric);

    const Chart& chart() const { return chart_; }
    const Matrix<Rational>& metric() const { return metric_; }
    const Matrix<Rational>& inverse_metric() const { return inverse_; }
    Rational det() const { return det_; }
    bool is_euclidean() const;

private:
    Chart chart_;
    Matrix<Rational> metric_;
    Matrix<Rational> inverse_;
    Rational det_;
};

/// Totally antisymmetric (k,0) tensor. k = 1 gives a plain vector field.
TensorField zero_multivector(const Chart& chart, int k);

/// v_1 ^ ... ^ v_k for vector fields, with (e_1 ^ e_2)^{12} = 1.
TensorField wedge_vectors(const std::vector<TensorField>& vectors);

/// Rational part rho of the Hodge star on k-vectors: * = sqrt(det G) rho.
/// (rho P)^J = G^{-1}-raised sum_I P^I eps_{IJ} over increasing I, J, with
/// the chart order positively oriented.
TensorField hodge_star_rational(const TensorField& multivector, const RiemannianBackground& bg);

/// (m-1)-fold contraction beta^{ij} = A^{i i_2..i_m} B^{j j_2..j_m} g_{i_2 j_2}...g_{i_m j_m}
/// of two m-vectors, summed over all ordered index tuples.
TensorField contraction(const TensorField& a, const TensorField& b, const RiemannianBackground& bg);

struct NHatComponent {
    int xi = 0;
    int eta = 0;
    std::vector<int> xi_tuple;
    std::vector<int> eta_tuple;
    TensorField value;
};

struct NHatResult {
    int r = 0;
    std::vector<NHatComponent> nonzero;
    bool vanishes() const { return nonzero.empty(); }
    /// Independent check: involutivity of the column span of Theta.
    bool image_integrable = true;
    std::optional<BracketWitness> witness;
};

/// N^(xi, xi^1..xi^r, eta, eta^1..eta^r) = Omega[Theta xi, Theta eta] on
/// coordinate 1-forms, where Omega is the contraction of
/// *(Theta xi^1 ^ ... ^ Theta xi^r) against *(Theta eta^1 ^ ... ^ Theta eta^r)
/// and is applied to the bracket after lowering it with the metric. Theta
/// must be a symmetric or antisymmetric (2,0) tensor of constant rank r.
NHatResult n_hat(const TensorField& theta, int r, const RiemannianBackground& bg, const std::vector<Point>& samples);

}  // namespace nij
