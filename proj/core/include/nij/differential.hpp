#pragma once

#include <vector>

#include "nij/tensor.hpp"

namespace nij {

/// v(f) = v^i d_i f.
ScalarField directional(const TensorField& v, const ScalarField& f);

/// [v, w]^k = v^i d_i w^k - w^i d_i v^k.
TensorField lie_bracket(const TensorField& v, const TensorField& w);

/// Theta(v) for a (1,1) tensor and a vector field.
TensorField apply(const TensorField& theta, const TensorField& v);

/// Composition a o b of (1,1) tensors.
TensorField compose(const TensorField& a, const TensorField& b);

/// Identity (1,1) tensor.
TensorField identity_endomorphism(const Chart& chart);

/// Zero q-form, stored antisymmetrically.
TensorField zero_form(const Chart& chart, int q);

/// Constant 0-form.
TensorField function_form(const Chart& chart, const ScalarField& f);

/// dx^{i_1} ^ ... ^ dx^{i_q}.
TensorField basis_form(const Chart& chart, const std::vector<int>& indices);

/// Exterior derivative of an antisymmetric (0,q) tensor.
TensorField exterior_derivative(const TensorField& omega);

/// Wedge product with the determinant convention (dx^1 ^ dx^2)(d_1, d_2) = 1.
TensorField wedge(const TensorField& a, const TensorField& b);

/// Value of a q-form on q vector fields.
ScalarField evaluate_form(const TensorField& omega, const std::vector<TensorField>& vectors);

/// (L_v g)(w, u) = v(g(w, u)) - g([v, w], u) - g(w, [v, u]).
TensorField lie_derivative_02(const TensorField& v, const TensorField& g);

/// Covariant derivative of a (1,1), (0,2) or (2,0) tensor. The differentiation
/// index is appended last: (nabla T)^{...}_{..., a} = (nabla_{d_a} T)^{...}_{...}.
TensorField covariant_derivative(const TensorField& t, const ConnectionCoefficients& nabla);

/// nabla_v T from the full covariant derivative, contracting the last slot with v.
TensorField contract_last(const TensorField& nabla_t, const TensorField& v);

/// Componentwise evaluation; throws PoleError at a denominator zero.
NumericTensor evaluate_at_point(const TensorField& t, const Point& point);

/// Evaluates a matrix of scalar fields at a point.
Matrix<Rational> evaluate_matrix(const Matrix<ScalarField>& m, const Point& point);

/// Matrix of rationals lifted to constant scalar fields on the chart.
Matrix<ScalarField> lift_matrix(const Chart& chart, const Matrix<Rational>& m);

}  // namespace nij
