#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nij/linalg.hpp"
#include "nij/tensor.hpp"

namespace nij {

/// Span of vector fields with a certified constant rank: the generic rank and
/// the rank at every sample point equal the declared rank.
class VectorFieldSpan {
public:
    /// Throws RankError when the declared rank disagrees with the computed ranks.
    VectorFieldSpan(Chart chart, std::vector<TensorField> generators, std::size_t declared_rank,
                    std::vector<Point> samples);
    /// Declared rank taken from the generic rank; samples must agree.
    static VectorFieldSpan with_generic_rank(Chart chart, std::vector<TensorField> generators,
                                             std::vector<Point> samples);

    const Chart& chart() const { return chart_; }
    const std::vector<TensorField>& generators() const { return generators_; }
    std::size_t rank() const { return rank_; }
    const std::vector<Point>& samples() const { return samples_; }
    /// Rows are the generators' component vectors.
    Matrix<ScalarField> matrix() const;

private:
    Chart chart_;
    std::vector<TensorField> generators_;
    std::size_t rank_ = 0;
    std::vector<Point> samples_;
};

/// Generator matrix with one row per vector field.
Matrix<ScalarField> rows_of(const Chart& chart, const std::vector<TensorField>& fields);

/// v lies in the span iff appending it does not raise the generic rank.
bool span_membership(const TensorField& v, const VectorFieldSpan& span);

struct BracketWitness {
    std::size_t i = 0;
    std::size_t j = 0;
    TensorField bracket;
};

struct IntegrabilityResult {
    bool integrable = true;
    std::optional<BracketWitness> witness;
};

/// Involutivity: every generator bracket lies in the span.
IntegrabilityResult distribution_integrability(const VectorFieldSpan& span);

struct ProjectabilityResult {
    bool projectable = false;
    /// Set when dim(V cap Z) is not constant on the samples.
    bool intersection_constant = true;
    std::size_t intersection_dim = 0;
    std::optional<BracketWitness> witness;
};

/// Z is V-projectable iff dim(V cap Z) is constant and [V, Z] lies in V + Z.
/// Throws PreconditionError when V is not integrable.
ProjectabilityResult distribution_projectability(const VectorFieldSpan& v, const VectorFieldSpan& z);

/// Polynomial vector fields spanning the kernel of a matrix acting on vectors.
std::vector<TensorField> kernel_fields(const Chart& chart, const Matrix<ScalarField>& m);

/// Columns of a matrix as vector fields.
std::vector<TensorField> column_fields(const Chart& chart, const Matrix<ScalarField>& m);

/// Default sample set: a few deterministic rational points avoiding small integers.
std::vector<Point> default_samples(std::size_t dim);

}  // namespace nij
