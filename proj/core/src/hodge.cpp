#include "nij/hodge.hpp"

#include <algorithm>
#include <functional>

#include "nij/differential.hpp"
#include "nij/error.hpp"
#include "nij/linalg.hpp"
#include "nij/nijenhuis.hpp"

namespace nij {

namespace {

std::vector<std::vector<int>> increasing_tuples(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    if (k >= 0 && k <= n) rec(0);
    return out;
}

Rational minor(const Matrix<Rational>& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    Matrix<Rational> s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            s(i, j) = m(static_cast<std::size_t>(rows[i]), static_cast<std::size_t>(cols[j]));
    return rows.empty() ? Rational(1) : determinant(s);
}

int permutation_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

void require_multivector(const TensorField& t) {
    if (t.lower() != 0 || t.upper() < 1) throw InputError("expected a k-vector");
    if (t.upper() >= 2 && t.symmetry() != Symmetry::antisymmetric) throw InputError("expected an antisymmetric (k,0) tensor");
}

long factorial(int k) {
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Lowers the trailing m-1 slots of an m-vector: L^j_I = sum_J B^{jJ} det G[I,J].
std::map<std::pair<int, std::vector<int>>, ScalarField> lower_tail(const TensorField& b, const Matrix<Rational>& g,
                                                                   bool euclidean) {
    int n = static_cast<int>(b.dim());
    int m = b.upper();
    auto tuples = increasing_tuples(n, m - 1);
    std::map<std::pair<int, std::vector<int>>, ScalarField> out;
    for (int j = 0; j < n; ++j)
        for (const auto& jt : tuples) {
            Index key{j};
            key.insert(key.end(), jt.begin(), jt.end());
            ScalarField bj = b.get(key);
            if (bj.is_zero()) continue;
            if (euclidean) {
                out[{j, jt}] += bj;
                continue;
            }
            for (const auto& it : tuples) {
                Rational d = minor(g, it, jt);
                if (!d.is_zero()) out[{j, it}] += bj * ScalarField(d);
            }
        }
    return out;
}

}  // namespace

RiemannianBackground::RiemannianBackground(Chart chart)
    : RiemannianBackground(chart, Matrix<Rational>::identity(chart.dim())) {}

RiemannianBackground::RiemannianBackground(Chart chart, Matrix<Rational> metric)
    : chart_(std::move(chart)), metric_(std::move(metric)) {
    std::size_t n = chart_.dim();
    if (metric_.rows() != n || metric_.cols() != n) throw InputError("metric size does not match chart");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!(metric_(i, j) == metric_(j, i))) throw InputError("metric is not symmetric");
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<int> idx;
        for (std::size_t i = 0; i < k; ++i) idx.push_back(static_cast<int>(i));
        if (minor(metric_, idx, idx).sign() <= 0) throw InputError("metric is not positive definite");
    }
    inverse_ = inverse(metric_);
    det_ = determinant(metric_);
}

bool RiemannianBackground::is_euclidean() const { return metric_ == Matrix<Rational>::identity(chart_.dim()); }

TensorField zero_multivector(const Chart& chart, int k) {
    return TensorField(chart, k, 0, k >= 2 ? Symmetry::antisymmetric : Symmetry::none);
}

TensorField wedge_vectors(const std::vector<TensorField>& vectors) {
    if (vectors.empty()) throw InputError("wedge of no vectors");
    const Chart& chart = vectors.front().chart();
    int k = static_cast<int>(vectors.size());
    TensorField out = zero_multivector(chart, k);
    for (const auto& idx : increasing_tuples(static_cast<int>(chart.dim()), k)) {
        Matrix<ScalarField> m(static_cast<std::size_t>(k), static_cast<std::size_t>(k), chart.zero());
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) m(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = vectors[static_cast<std::size_t>(a)].get({idx[static_cast<std::size_t>(b)]});
        out.set(idx, determinant(m));
    }
    return out;
}

TensorField hodge_star_rational(const TensorField& multivector, const RiemannianBackground& bg) {
    require_multivector(multivector);
    const Chart& chart = multivector.chart();
    if (!(chart == bg.chart())) throw InputError("chart mismatch");
    int n = static_cast<int>(chart.dim());
    int k = multivector.upper();
    if (k > n) throw InputError("multivector degree exceeds dimension");
    int m = n - k;
    // Lowered (n-k)-form omega_J = sum_I P^I eps_{IJ}.
    std::map<std::vector<int>, ScalarField> omega;
    for (const auto& [idx, c] : multivector.components()) {
        std::vector<int> comp;
        for (int i = 0; i < n; ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) comp.push_back(i);
        std::vector<int> perm = idx;
        perm.insert(perm.end(), comp.begin(), comp.end());
        ScalarField v = permutation_sign(perm) > 0 ? c : -c;
        omega[comp] += v;
    }
    if (m == 0) {
        TensorField s(chart, 0, 0);
        auto it = omega.find({});
        if (it != omega.end()) s.set({}, it->second);
        return s;
    }
    TensorField out = zero_multivector(chart, m);
    bool euclid = bg.is_euclidean();
    for (const auto& jp : increasing_tuples(n, m)) {
        ScalarField acc = chart.zero();
        for (const auto& [j, w] : omega) {
            if (euclid) {
                if (j == jp) acc += w;
                continue;
            }
            Rational d = minor(bg.inverse_metric(), jp, j);
            if (!d.is_zero()) acc += w * ScalarField(d);
        }
        out.set(jp, acc);
    }
    return out;
}

TensorField contraction(const TensorField& a, const TensorField& b, const RiemannianBackground& bg) {
    require_multivector(a);
    require_multivector(b);
    if (a.upper() != b.upper()) throw InputError("contraction needs multivectors of equal degree");
    if (!(a.chart() == b.chart()) || !(a.chart() == bg.chart())) throw InputError("chart mismatch");
    int n = static_cast<int>(a.dim());
    int m = a.upper();
    auto low = lower_tail(b, bg.metric(), bg.is_euclidean());
    ScalarField scale(Rational(factorial(m - 1)));
    TensorField out(a.chart(), 2, 0);
    for (int i = 0; i < n; ++i)
        for (const auto& it : increasing_tuples(n, m - 1)) {
            Index key{i};
            key.insert(key.end(), it.begin(), it.end());
            ScalarField ai = a.get(key);
            if (ai.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                auto f = low.find({j, it});
                if (f != low.end()) out.add({i, j}, scale * ai * f->second);
            }
        }
    return out;
}

NHatResult n_hat(const TensorField& theta, int r, const RiemannianBackground& bg, const std::vector<Point>& samples) {
    if (theta.upper() != 2 || theta.lower() != 0) throw InputError("N-hat requires a (2,0) tensor");
    if (theta.symmetry() == Symmetry::none) {
        Matrix<ScalarField> t = theta.as_matrix();
        bool sym = true, anti = true;
        for (std::size_t i = 0; i < t.rows(); ++i)
            for (std::size_t j = 0; j < t.cols(); ++j) {
                sym = sym && t(i, j) == t(j, i);
                anti = anti && t(i, j) == -t(j, i);
            }
        if (!sym && !anti) throw InputError("N-hat requires a symmetric or antisymmetric (2,0) tensor");
    }
    const Chart& chart = theta.chart();
    int n = static_cast<int>(chart.dim());
    Matrix<ScalarField> tm = theta.as_matrix();
    require_rank(tm, r, samples, "N-hat");

    NHatResult res;
    res.r = r;
    auto columns = column_fields(chart, tm);
    VectorFieldSpan image(chart, columns, static_cast<std::size_t>(r), samples);
    auto integ = distribution_integrability(image);
    res.image_integrable = integ.integrable;
    res.witness = integ.witness;
    if (r == 0 || r >= n) return res;  // Omega is a contraction of scalars or the zero map.

    // S_A = *(Theta dx^{a_1} ^ ... ^ Theta dx^{a_r}), up to the factor sqrt(det G).
    std::vector<std::pair<std::vector<int>, TensorField>> stars;
    for (const auto& a : increasing_tuples(n, r)) {
        std::vector<TensorField> vs;
        for (int ai : a) vs.push_back(columns[static_cast<std::size_t>(ai)]);
        TensorField s = hodge_star_rational(wedge_vectors(vs), bg);
        if (!s.is_zero()) stars.emplace_back(a, std::move(s));
    }
    // Lowered brackets g [Theta dx^a, Theta dx^b].
    Matrix<ScalarField> g = lift_matrix(chart, bg.metric());
    std::vector<std::pair<std::pair<int, int>, std::vector<ScalarField>>> brackets;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            TensorField br = lie_bracket(columns[static_cast<std::size_t>(a)], columns[static_cast<std::size_t>(b)]);
            if (br.is_zero()) continue;
            std::vector<ScalarField> low(static_cast<std::size_t>(n), chart.zero());
            for (const auto& [k, x] : br.components())
                for (int j = 0; j < n; ++j)
                    if (!g(static_cast<std::size_t>(j), static_cast<std::size_t>(k[0])).is_zero())
                        low[static_cast<std::size_t>(j)] += g(static_cast<std::size_t>(j), static_cast<std::size_t>(k[0])) * x;
            brackets.push_back({{a, b}, std::move(low)});
        }
    if (brackets.empty()) return res;
    ScalarField det(bg.det());
    for (const auto& [ta, sa] : stars)
        for (const auto& [tb, sb] : stars) {
            TensorField omega = contraction(sa, sb, bg);
            if (omega.is_zero()) continue;
            for (const auto& [ab, low] : brackets) {
                TensorField v(chart, 1, 0);
                for (const auto& [k, x] : omega.components())
                    if (!low[static_cast<std::size_t>(k[1])].is_zero()) v.add({k[0]}, det * x * low[static_cast<std::size_t>(k[1])]);
                if (!v.is_zero()) res.nonzero.push_back({ab.first, ab.second, ta, tb, std::move(v)});
            }
        }
    return res;
}

}  // namespace nij
