#pragma once

#include <optional>
#include <vector>

#include "nij/distribution.hpp"
#include "nij/jordan.hpp"
#include "nij/tensor.hpp"

namespace nij {

/// N(v,w) = Theta[Theta v, w] + Theta[v, Theta w] - [Theta v, Theta w] - Theta^2 [v, w].
TensorField nijenhuis_apply(const TensorField& theta, const TensorField& v, const TensorField& w);

/// N on all coordinate-field pairs, as a (1,2) tensor antisymmetric in the lower pair.
TensorField nijenhuis_11(const TensorField& theta);

/// [Theta nabla_v Theta - nabla_{Theta v} Theta] w + [nabla_{Theta w} Theta - Theta nabla_w Theta] v.
TensorField nijenhuis_covariant_rhs(const TensorField& theta, const ConnectionCoefficients& nabla,
                                    const TensorField& v, const TensorField& w);

/// Theta^k for a (1,1) tensor.
TensorField power(const TensorField& theta, int k);

/// One nonzero value of a form-valued Nijenhuis-type tensor: the leading
/// arguments (coordinate fields or frame indices) and the r-tuple.
struct FormComponent {
    std::vector<int> head;
    std::vector<int> tuple;
    TensorField value;
};

struct FormFamily {
    int r = 0;
    std::vector<FormComponent> nonzero;
    bool vanishes() const { return nonzero.empty(); }
};

/// Values head_form ^ rows[b_1] ^ ... ^ rows[b_r] over increasing tuples b.
FormFamily wedge_family(const std::vector<std::pair<std::vector<int>, TensorField>>& heads,
                        const std::vector<TensorField>& rows, int r);

/// Generic rank of a scalar matrix, checked against r and every sample.
void require_rank(const Matrix<ScalarField>& m, int r, const std::vector<Point>& samples, const char* what);

/// N'(v, v_1..v_r) = d[g(v,.)] ^ g(v_1,.) ^ ... ^ g(v_r,.).
FormFamily n_prime(const TensorField& g, int r, const std::vector<Point>& samples);

/// N''(w, u, v_1..v_r) = {[L g](w,u)} ^ g(v_1,.) ^ ... ^ g(v_r,.), where the
/// formal 1-form [L g](w,u) is v_a -> [L_{v_a} g](w,u) on the trivializing
/// frame (columns of `frame`; adapted_trivialization(g, r) when empty).
/// The frame must contain n - r sections of Ker g; InputError otherwise.
FormFamily n_double_prime(const TensorField& g, int r, const std::vector<Point>& samples,
                          const std::optional<Matrix<ScalarField>>& frame = std::nullopt);

/// Polynomial sections spanning Ker g, completed by coordinate fields.
Matrix<ScalarField> adapted_trivialization(const TensorField& g, int r);

/// Vector-bundle morphism given by the 1-forms Theta^* e_v (rows of `rows`).
class MorphismField {
public:
    /// Throws RankError unless the generic and sampled ranks equal `rank`.
    MorphismField(Chart chart, Matrix<ScalarField> rows, int rank, std::vector<Point> samples);

    const Chart& chart() const { return chart_; }
    const Matrix<ScalarField>& matrix() const { return rows_; }
    std::size_t domain_rank() const { return rows_.rows(); }
    int rank() const { return rank_; }
    const std::vector<Point>& samples() const { return samples_; }
    std::vector<TensorField> forms() const;

private:
    Chart chart_;
    Matrix<ScalarField> rows_;
    int rank_;
    std::vector<Point> samples_;
};

/// N~(v, v_1..v_r) = [d(Theta^* v)] ^ Theta^* v_1 ^ ... ^ Theta^* v_r.
FormFamily n_tilde(const MorphismField& theta_star);

struct KernelNijenhuis {
    int power = 0;
    int rank = 0;
    FormFamily family;
    /// Integrability of Ker Theta^power, computed independently by brackets.
    bool kernel_integrable = true;
    std::optional<BracketWitness> witness;
};

/// N^i for 1 <= i < d_1: N~ of the metric-lowered Theta^i. Throws
/// PreconditionError when Theta is not nilpotent or its rank sequence is not
/// constant on the samples.
std::vector<KernelNijenhuis> kernel_nijenhuis_family(const TensorField& theta, const Matrix<Rational>& metric,
                                                     const std::vector<Point>& samples);

/// Jordan profile of a nilpotent (1,1) tensor from generic ranks of its
/// powers, checked on the samples. nullopt if not nilpotent.
std::optional<JordanProfile> field_profile(const TensorField& theta, const std::vector<Point>& samples);

}  // namespace nij
