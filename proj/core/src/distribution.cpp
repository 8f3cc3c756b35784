#include "nij/distribution.hpp"

#include "nij/differential.hpp"
#include "nij/error.hpp"

namespace nij {

Matrix<ScalarField> rows_of(const Chart& chart, const std::vector<TensorField>& fields) {
    Matrix<ScalarField> m(fields.size(), chart.dim(), chart.zero());
    for (std::size_t r = 0; r < fields.size(); ++r) {
        if (!(fields[r].chart() == chart)) throw InputError("chart mismatch in span");
        if (fields[r].upper() != 1 || fields[r].lower() != 0) throw InputError("span generators must be vector fields");
        for (const auto& [k, x] : fields[r].components()) m(r, static_cast<std::size_t>(k[0])) = x;
    }
    return m;
}

VectorFieldSpan::VectorFieldSpan(Chart chart, std::vector<TensorField> generators, std::size_t declared_rank,
                                 std::vector<Point> samples)
    : chart_(std::move(chart)), generators_(std::move(generators)), rank_(declared_rank), samples_(std::move(samples)) {
    for (const auto& s : samples_)
        if (s.size() != chart_.dim()) throw InputError("sample point dimension does not match chart");
    Matrix<ScalarField> m = matrix();
    std::size_t g = generators_.empty() ? 0 : generic_rank(m);
    if (g != rank_)
        throw RankError("declared rank " + std::to_string(rank_) + " but generic rank is " + std::to_string(g));
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        std::size_t r = generators_.empty() ? 0 : rank_at(m, samples_[i]);
        if (r != rank_)
            throw RankError("rank " + std::to_string(r) + " at sample " + std::to_string(i + 1) +
                            " differs from declared rank " + std::to_string(rank_));
    }
}

VectorFieldSpan VectorFieldSpan::with_generic_rank(Chart chart, std::vector<TensorField> generators,
                                                   std::vector<Point> samples) {
    std::size_t g = generators.empty() ? 0 : generic_rank(rows_of(chart, generators));
    return VectorFieldSpan(std::move(chart), std::move(generators), g, std::move(samples));
}

Matrix<ScalarField> VectorFieldSpan::matrix() const { return rows_of(chart_, generators_); }

namespace {

bool in_row_space(const Matrix<ScalarField>& base, std::size_t base_rank, const TensorField& v) {
    if (v.is_zero()) return true;
    Matrix<ScalarField> m(base.rows() + 1, base.cols());
    for (std::size_t i = 0; i < base.rows(); ++i)
        for (std::size_t j = 0; j < base.cols(); ++j) m(i, j) = base(i, j);
    for (const auto& [k, x] : v.components()) m(base.rows(), static_cast<std::size_t>(k[0])) = x;
    return generic_rank(m) == base_rank;
}

}  // namespace

bool span_membership(const TensorField& v, const VectorFieldSpan& span) {
    if (!(v.chart() == span.chart())) throw InputError("chart mismatch");
    return in_row_space(span.matrix(), span.rank(), v);
}

IntegrabilityResult distribution_integrability(const VectorFieldSpan& span) {
    IntegrabilityResult res;
    Matrix<ScalarField> m = span.matrix();
    const auto& gens = span.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            TensorField b = lie_bracket(gens[i], gens[j]);
            if (!in_row_space(m, span.rank(), b)) {
                res.integrable = false;
                res.witness = BracketWitness{i, j, b};
                return res;
            }
        }
    return res;
}

ProjectabilityResult distribution_projectability(const VectorFieldSpan& v, const VectorFieldSpan& z) {
    if (!(v.chart() == z.chart())) throw InputError("chart mismatch");
    if (!distribution_integrability(v).integrable)
        throw PreconditionError("projectability requires an integrable distribution V");
    std::vector<TensorField> sum = v.generators();
    sum.insert(sum.end(), z.generators().begin(), z.generators().end());
    Matrix<ScalarField> msum = rows_of(v.chart(), sum);
    Matrix<ScalarField> mv = v.matrix(), mz = z.matrix();

    ProjectabilityResult res;
    std::size_t rk_sum = sum.empty() ? 0 : generic_rank(msum);
    res.intersection_dim = v.rank() + z.rank() - rk_sum;
    auto samples = v.samples();
    samples.insert(samples.end(), z.samples().begin(), z.samples().end());
    for (const auto& s : samples) {
        std::size_t rv = mv.rows() ? rank_at(mv, s) : 0;
        std::size_t rz = mz.rows() ? rank_at(mz, s) : 0;
        std::size_t rs = msum.rows() ? rank_at(msum, s) : 0;
        if (rv + rz - rs != res.intersection_dim) res.intersection_constant = false;
    }
    if (!res.intersection_constant) return res;
    for (std::size_t i = 0; i < v.generators().size(); ++i)
        for (std::size_t j = 0; j < z.generators().size(); ++j) {
            TensorField b = lie_bracket(v.generators()[i], z.generators()[j]);
            if (!in_row_space(msum, rk_sum, b)) {
                res.witness = BracketWitness{i, j, b};
                return res;
            }
        }
    res.projectable = true;
    return res;
}

std::vector<TensorField> kernel_fields(const Chart& chart, const Matrix<ScalarField>& m) {
    std::vector<TensorField> out;
    for (auto& v : nullspace(m)) out.push_back(TensorField::vector_field(chart, clear_denominators(v)));
    return out;
}

std::vector<TensorField> column_fields(const Chart& chart, const Matrix<ScalarField>& m) {
    std::vector<TensorField> out;
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(TensorField::vector_field(chart, m.column(j)));
    return out;
}

std::vector<Point> default_samples(std::size_t dim) {
    std::vector<Point> pts;
    for (long k = 0; k < 3; ++k) {
        Point p;
        for (std::size_t i = 0; i < dim; ++i) p.emplace_back(2 * static_cast<long>(i) + k + 3, k + 2);
        pts.push_back(std::move(p));
    }
    return pts;
}

}  // namespace nij
