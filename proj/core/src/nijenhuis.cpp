#include "nij/nijenhuis.hpp"

#include <functional>

#include "nij/differential.hpp"
#include "nij/distribution.hpp"
#include "nij/error.hpp"
#include "nij/linalg.hpp"

namespace nij {

TensorField nijenhuis_apply(const TensorField& theta, const TensorField& v, const TensorField& w) {
    TensorField tv = apply(theta, v), tw = apply(theta, w);
    TensorField r = apply(theta, lie_bracket(tv, w) + lie_bracket(v, tw)) - lie_bracket(tv, tw);
    TensorField vw = lie_bracket(v, w);
    if (!vw.is_zero()) r -= apply(theta, apply(theta, vw));
    return r;
}

TensorField nijenhuis_11(const TensorField& theta) {
    if (theta.upper() != 1 || theta.lower() != 1) throw InputError("nijenhuis_11 requires a (1,1) tensor");
    const Chart& chart = theta.chart();
    int n = static_cast<int>(chart.dim());
    std::vector<TensorField> e, te;
    for (int i = 0; i < n; ++i) {
        e.push_back(TensorField::coordinate_field(chart, i));
        te.push_back(apply(theta, e.back()));
    }
    TensorField out(chart, 1, 2, Symmetry::antisymmetric);
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            // Coordinate fields commute, so the Theta^2 term drops.
            TensorField x = apply(theta, lie_bracket(te[static_cast<std::size_t>(j)], e[static_cast<std::size_t>(k)]) +
                                             lie_bracket(e[static_cast<std::size_t>(j)], te[static_cast<std::size_t>(k)])) -
                            lie_bracket(te[static_cast<std::size_t>(j)], te[static_cast<std::size_t>(k)]);
            for (const auto& [idx, c] : x.components()) out.set({idx[0], j, k}, c);
        }
    return out;
}

TensorField nijenhuis_covariant_rhs(const TensorField& theta, const ConnectionCoefficients& nabla,
                                    const TensorField& v, const TensorField& w) {
    TensorField dt = covariant_derivative(theta, nabla);
    auto along = [&](const TensorField& x) { return contract_last(dt, x); };
    TensorField first = compose(theta, along(v)) - along(apply(theta, v));
    TensorField second = along(apply(theta, w)) - compose(theta, along(w));
    return apply(first, w) + apply(second, v);
}

TensorField power(const TensorField& theta, int k) {
    TensorField r = identity_endomorphism(theta.chart());
    for (int i = 0; i < k; ++i) r = compose(r, theta);
    return r;
}

FormFamily wedge_family(const std::vector<std::pair<std::vector<int>, TensorField>>& heads,
                        const std::vector<TensorField>& rows, int r) {
    FormFamily fam;
    fam.r = r;
    if (heads.empty()) return fam;
    const Chart& chart = heads.front().second.chart();
    std::size_t n = chart.dim();
    // Exterior products of increasing r-tuples of rows.
    std::vector<std::pair<std::vector<int>, TensorField>> products;
    std::vector<int> tuple;
    std::function<void(int, const TensorField&)> rec = [&](int start, const TensorField& acc) {
        if (static_cast<int>(tuple.size()) == r) {
            if (!acc.is_zero()) products.emplace_back(tuple, acc);
            return;
        }
        for (int b = start; b < static_cast<int>(rows.size()); ++b) {
            TensorField next = wedge(acc, rows[static_cast<std::size_t>(b)]);
            if (next.is_zero()) continue;
            tuple.push_back(b);
            rec(b + 1, next);
            tuple.pop_back();
        }
    };
    rec(0, function_form(chart, chart.constant(Rational(1))));
    for (const auto& [head, form] : heads) {
        if (form.is_zero() || static_cast<std::size_t>(form.lower() + r) > n) continue;
        for (const auto& [b, w] : products) {
            TensorField value = wedge(form, w);
            if (!value.is_zero()) fam.nonzero.push_back({head, b, std::move(value)});
        }
    }
    return fam;
}

void require_rank(const Matrix<ScalarField>& m, int r, const std::vector<Point>& samples, const char* what) {
    std::size_t g = generic_rank(m);
    if (static_cast<int>(g) != r)
        throw RankError(std::string(what) + ": declared rank " + std::to_string(r) + " but generic rank is " +
                        std::to_string(g));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        std::size_t s = rank_at(m, samples[i]);
        if (static_cast<int>(s) != r)
            throw RankError(std::string(what) + ": rank " + std::to_string(s) + " at sample " + std::to_string(i + 1) +
                            " differs from declared rank " + std::to_string(r));
    }
}

namespace {

void require_sym02(const TensorField& g) {
    if (g.upper() != 0 || g.lower() != 2) throw InputError("expected a (0,2) tensor");
    Matrix<ScalarField> m = g.as_matrix();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (!(m(i, j) == m(j, i))) throw InputError("(0,2) tensor is not symmetric");
}

std::vector<TensorField> row_forms(const Chart& chart, const Matrix<ScalarField>& m) {
    std::vector<TensorField> out;
    for (std::size_t i = 0; i < m.rows(); ++i)
        out.push_back(TensorField::one_form(chart, std::vector<ScalarField>(m.row(i).begin(), m.row(i).end())));
    return out;
}

}  // namespace

FormFamily n_prime(const TensorField& g, int r, const std::vector<Point>& samples) {
    require_sym02(g);
    Matrix<ScalarField> m = g.as_matrix();
    require_rank(m, r, samples, "N'");
    auto rows = row_forms(g.chart(), m);
    std::vector<std::pair<std::vector<int>, TensorField>> heads;
    for (std::size_t a = 0; a < rows.size(); ++a) heads.emplace_back(std::vector<int>{static_cast<int>(a)}, exterior_derivative(rows[a]));
    return wedge_family(heads, rows, r);
}

FormFamily n_double_prime(const TensorField& g, int r, const std::vector<Point>& samples,
                          const std::optional<Matrix<ScalarField>>& frame) {
    require_sym02(g);
    const Chart& chart = g.chart();
    std::size_t n = chart.dim();
    Matrix<ScalarField> m = g.as_matrix();
    require_rank(m, r, samples, "N''");
    Matrix<ScalarField> f = frame ? *frame : adapted_trivialization(g, r);
    if (f.rows() != n || f.cols() != n) throw InputError("trivializing frame must be n x n");
    if (generic_rank(f) != n) throw InputError("trivializing frame is degenerate");
    std::size_t in_kernel = 0;
    for (std::size_t a = 0; a < n; ++a) {
        auto col = f.column(a);
        bool zero = true;
        for (std::size_t i = 0; i < n && zero; ++i) {
            ScalarField x = chart.zero();
            for (std::size_t j = 0; j < n; ++j) x += m(i, j) * col[j];
            zero = x.is_zero();
        }
        if (zero) ++in_kernel;
    }
    if (static_cast<int>(in_kernel) != static_cast<int>(n) - r)
        throw InputError("trivializing frame must contain n - r sections of Ker g");
    // Row a of the inverse is the dual coframe element theta^a.
    Matrix<ScalarField> coframe = inverse(f);
    std::vector<TensorField> lie;
    for (std::size_t a = 0; a < n; ++a) lie.push_back(lie_derivative_02(TensorField::vector_field(chart, f.column(a)), g));
    std::vector<std::pair<std::vector<int>, TensorField>> heads;
    for (int c = 0; c < static_cast<int>(n); ++c)
        for (int e = c; e < static_cast<int>(n); ++e) {
            std::vector<ScalarField> lambda(n, chart.zero());
            for (std::size_t a = 0; a < n; ++a) {
                ScalarField la = lie[a].get({c, e});
                if (la.is_zero()) continue;
                for (std::size_t i = 0; i < n; ++i)
                    if (!coframe(a, i).is_zero()) lambda[i] += la * coframe(a, i);
            }
            heads.emplace_back(std::vector<int>{c, e}, TensorField::one_form(chart, lambda));
        }
    return wedge_family(heads, row_forms(chart, m), r);
}

Matrix<ScalarField> adapted_trivialization(const TensorField& g, int r) {
    require_sym02(g);
    const Chart& chart = g.chart();
    std::size_t n = chart.dim();
    Matrix<ScalarField> m = g.as_matrix();
    auto kernel = kernel_fields(chart, m);
    if (static_cast<int>(kernel.size()) != static_cast<int>(n) - r) throw RankError("Ker g has unexpected rank");
    std::vector<std::vector<ScalarField>> cols;
    for (const auto& v : kernel) cols.push_back(clear_denominators(v.as_vector()));
    auto as_matrix = [&](const std::vector<std::vector<ScalarField>>& cs) {
        Matrix<ScalarField> f(n, cs.size(), chart.zero());
        for (std::size_t a = 0; a < cs.size(); ++a)
            for (std::size_t i = 0; i < n; ++i) f(i, a) = cs[a][i];
        return f;
    };
    for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
        std::vector<ScalarField> e(n, chart.zero());
        e[i] = chart.constant(Rational(1));
        cols.push_back(e);
        if (generic_rank(as_matrix(cols)) < cols.size()) cols.pop_back();
    }
    return as_matrix(cols);
}

MorphismField::MorphismField(Chart chart, Matrix<ScalarField> rows, int rank, std::vector<Point> samples)
    : chart_(std::move(chart)), rows_(std::move(rows)), rank_(rank), samples_(std::move(samples)) {
    if (rows_.cols() != chart_.dim()) throw InputError("morphism rows must be 1-forms on the chart");
    require_rank(rows_, rank_, samples_, "morphism");
}

std::vector<TensorField> MorphismField::forms() const { return row_forms(chart_, rows_); }

FormFamily n_tilde(const MorphismField& theta_star) {
    auto rows = theta_star.forms();
    std::vector<std::pair<std::vector<int>, TensorField>> heads;
    for (std::size_t a = 0; a < rows.size(); ++a) heads.emplace_back(std::vector<int>{static_cast<int>(a)}, exterior_derivative(rows[a]));
    return wedge_family(heads, rows, theta_star.rank());
}

std::optional<JordanProfile> field_profile(const TensorField& theta, const std::vector<Point>& samples) {
    if (theta.upper() != 1 || theta.lower() != 1) throw InputError("expected a (1,1) tensor");
    int n = static_cast<int>(theta.dim());
    if (!power(theta, n).is_zero()) return std::nullopt;
    std::vector<int> ranks{n};
    TensorField p = identity_endomorphism(theta.chart());
    for (int i = 1; i <= n; ++i) {
        p = compose(p, theta);
        ranks.push_back(p.is_zero() ? 0 : static_cast<int>(generic_rank(p.as_matrix())));
    }
    std::vector<int> blocks;
    for (int i = n; i >= 1; --i) {
        int at_least = ranks[static_cast<std::size_t>(i - 1)] - ranks[static_cast<std::size_t>(i)];
        int next = i < n ? ranks[static_cast<std::size_t>(i)] - ranks[static_cast<std::size_t>(i + 1)] : 0;
        for (int k = 0; k < at_least - next; ++k) blocks.push_back(i);
    }
    JordanProfile generic(blocks);
    Matrix<ScalarField> m = theta.as_matrix();
    for (std::size_t s = 0; s < samples.size(); ++s) {
        auto at = jordan_profile(evaluate_matrix(m, samples[s]));
        if (!at || !(*at == generic))
            throw PreconditionError("Jordan profile at sample " + std::to_string(s + 1) + " differs from generic profile " +
                                    generic.str());
    }
    return generic;
}

std::vector<KernelNijenhuis> kernel_nijenhuis_family(const TensorField& theta, const Matrix<Rational>& metric,
                                                     const std::vector<Point>& samples) {
    auto profile = field_profile(theta, samples);
    if (!profile) throw PreconditionError("kernel Nijenhuis family requires a nilpotent tensor");
    const Chart& chart = theta.chart();
    Matrix<ScalarField> g = lift_matrix(chart, metric);
    std::vector<KernelNijenhuis> out;
    for (int i = 1; i < profile->longest(); ++i) {
        KernelNijenhuis k;
        k.power = i;
        k.rank = profile->rank_of_power(i);
        Matrix<ScalarField> ti = power(theta, i).as_matrix();
        MorphismField mf(chart, g * ti, k.rank, samples);
        k.family = n_tilde(mf);
        auto span = VectorFieldSpan::with_generic_rank(chart, kernel_fields(chart, ti), samples);
        auto integ = distribution_integrability(span);
        k.kernel_integrable = integ.integrable;
        k.witness = integ.witness;
        out.push_back(std::move(k));
    }
    return out;
}

}  // namespace nij
