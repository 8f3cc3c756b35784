#pragma once

#include <array>
#include <optional>
#include <vector>

#include "nij/distribution.hpp"
#include "nij/jordan.hpp"
#include "nij/tensor.hpp"

namespace nij {

/// Promotes a field on a chart with fewer coordinates (the leading ones).
ScalarField embed(const ScalarField& f, std::size_t nvars);

/// Almost-tangent structure on Sigma x R^c induced by a distribution D of corank c.
struct AffineTangentResult {
    Chart chart;
    /// Rows annihilate D: A(y) v = 0 for v in D.
    Matrix<ScalarField> annihilator;
    std::size_t corank = 0;
    /// Theta(d_{y^a}) = sum_mu A^mu_a d_{t^mu}, Theta(d_{t^mu}) = 0.
    TensorField theta;
    bool theta_squared_zero = false;
    bool nijenhuis_zero = false;
    std::optional<JordanProfile> profile;
    bool distribution_integrable = false;
    bool kernel_integrable = false;
    std::optional<BracketWitness> kernel_witness;
    /// Theta-images of coordinate lifts commute.
    bool fiber_translations_commute = false;
};

/// Samples are points of Sigma; fiber coordinates are sampled at t = 0 plus
/// a shifted copy. Throws RankError if the annihilator rank drops at a sample.
AffineTangentResult build_affine_tangent(const VectorFieldSpan& d);

/// Closed q-form (dx1^dx2 + dx3^dx4) ^ eta ^ dx6 ^ ... ^ dx^{q+2},
/// eta = dx5 + x1 dx2 - x3 dx4, on R^n.
struct NinFormResult {
    Chart chart;
    TensorField zeta;
    TensorField eta;
    /// eta, dx6, ..., dx^{q+2}.
    std::vector<TensorField> fco;
    /// d(eta) ^ eta ^ dx6 ^ ... ^ dx^{q+2}.
    TensorField witness;
    bool closed = false;
    std::vector<bool> annihilates;
    bool witness_nonzero = false;
    bool kernel_integrable = true;
    std::optional<BracketWitness> kernel_witness;
    /// zeta(x) = (xi1^xi2 + xi3^xi4) ^ xi5 ^ ... with xi5 = eta(x), xi^a = dx^a otherwise.
    bool normal_form_at_samples = false;
};

/// Requires n >= 5 and 3 <= q <= n - 2.
NinFormResult build_nin_form(int n, int q, const std::vector<Point>& samples);

/// Leaf data padded by zeros to the product chart.
struct ProductExtension {
    TensorField g;
    TensorField theta;
    ConnectionCoefficients nabla;
    TensorField nabla_g;
    TensorField nabla_theta;
    bool g_parallel = false;
    bool theta_parallel = false;
    /// True when some leaf component depends on a transverse coordinate.
    bool transverse_dependence = false;
};

/// g_leaf is s x s symmetric (0,2), theta_leaf is s x s (2,0), gamma_leaf
/// holds Gamma^k_{ij} at (k*s + i)*s + j; all may depend on every chart
/// coordinate. Throws PreconditionError naming (i,j,k) when a leafwise
/// parallelism identity fails, InputError on torsion or shape errors.
ProductExtension product_extension(const Chart& chart, int s, const Matrix<ScalarField>& g_leaf,
                                   const Matrix<ScalarField>& theta_leaf, const std::vector<ScalarField>& gamma_leaf);

}  // namespace nij
