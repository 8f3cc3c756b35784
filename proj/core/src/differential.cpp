#include "nij/differential.hpp"

#include <algorithm>
#include <numeric>

#include "nij/error.hpp"

namespace nij {

namespace {

void require_vector(const TensorField& v, const char* what) {
    if (v.upper() != 1 || v.lower() != 0) throw InputError(std::string(what) + " must be a vector field");
}

void require_same_chart(const TensorField& a, const TensorField& b) {
    if (!(a.chart() == b.chart())) throw InputError("chart mismatch");
}

void require_form(const TensorField& w) {
    if (w.upper() != 0) throw InputError("expected a differential form");
    if (w.lower() >= 2 && w.symmetry() != Symmetry::antisymmetric)
        throw InputError("expected an antisymmetric (0,q) tensor");
}

// Sign of the permutation sorting the concatenation of two increasing,
// disjoint index lists; 0 if they intersect.
int shuffle_sign(const Index& a, const Index& b, Index& merged) {
    merged.clear();
    merged.reserve(a.size() + b.size());
    int inversions = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            merged.push_back(a[i++]);
        } else if (i == a.size() || b[j] < a[i]) {
            inversions += static_cast<int>(a.size() - i);
            merged.push_back(b[j++]);
        } else {
            return 0;
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

ScalarField determinant_small(std::vector<std::vector<ScalarField>>& m) {
    std::size_t n = m.size();
    if (n == 0) return ScalarField(1);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    ScalarField det;
    do {
        int inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        ScalarField term(inv % 2 == 0 ? 1 : -1);
        for (std::size_t i = 0; i < n && !term.is_zero(); ++i) term *= m[i][perm[i]];
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

}  // namespace

ScalarField directional(const TensorField& v, const ScalarField& f) {
    require_vector(v, "direction");
    ScalarField r = v.chart().zero();
    for (const auto& [k, vi] : v.components()) {
        ScalarField d = f.derivative(static_cast<std::size_t>(k[0]));
        if (!d.is_zero()) r += vi * d;
    }
    return r;
}

TensorField lie_bracket(const TensorField& v, const TensorField& w) {
    require_vector(v, "bracket argument");
    require_vector(w, "bracket argument");
    require_same_chart(v, w);
    TensorField r(v.chart(), 1, 0);
    for (const auto& [k, wk] : w.components()) r.add(k, directional(v, wk));
    for (const auto& [k, vk] : v.components()) r.add(k, -directional(w, vk));
    return r;
}

TensorField apply(const TensorField& theta, const TensorField& v) {
    if (theta.upper() != 1 || theta.lower() != 1) throw InputError("apply requires a (1,1) tensor");
    require_vector(v, "argument");
    require_same_chart(theta, v);
    TensorField r(v.chart(), 1, 0);
    for (const auto& [k, t] : theta.components()) {
        ScalarField vj = v.get({k[1]});
        if (!vj.is_zero()) r.add({k[0]}, t * vj);
    }
    return r;
}

TensorField compose(const TensorField& a, const TensorField& b) {
    if (a.upper() != 1 || a.lower() != 1 || b.upper() != 1 || b.lower() != 1)
        throw InputError("compose requires (1,1) tensors");
    require_same_chart(a, b);
    TensorField r(a.chart(), 1, 1);
    for (const auto& [ka, x] : a.components())
        for (const auto& [kb, y] : b.components())
            if (ka[1] == kb[0]) r.add({ka[0], kb[1]}, x * y);
    return r;
}

TensorField identity_endomorphism(const Chart& chart) {
    TensorField r(chart, 1, 1);
    for (int i = 0; i < static_cast<int>(chart.dim()); ++i) r.set({i, i}, chart.constant(Rational(1)));
    return r;
}

TensorField zero_form(const Chart& chart, int q) {
    return TensorField(chart, 0, q, q >= 2 ? Symmetry::antisymmetric : Symmetry::none);
}

TensorField function_form(const Chart& chart, const ScalarField& f) {
    TensorField r(chart, 0, 0);
    r.set({}, f);
    return r;
}

TensorField basis_form(const Chart& chart, const std::vector<int>& indices) {
    TensorField r = zero_form(chart, static_cast<int>(indices.size()));
    r.set(indices, chart.constant(Rational(1)));
    return r;
}

TensorField exterior_derivative(const TensorField& omega) {
    require_form(omega);
    const Chart& chart = omega.chart();
    int q = omega.lower();
    TensorField r = zero_form(chart, q + 1);
    int n = static_cast<int>(chart.dim());
    for (const auto& [idx, c] : omega.components())
        for (int i = 0; i < n; ++i) {
            if (std::find(idx.begin(), idx.end(), i) != idx.end()) continue;
            ScalarField d = c.derivative(static_cast<std::size_t>(i));
            if (d.is_zero()) continue;
            Index merged;
            int s = shuffle_sign(Index{i}, idx, merged);
            r.add(merged, s > 0 ? d : -d);
        }
    return r;
}

TensorField wedge(const TensorField& a, const TensorField& b) {
    require_form(a);
    require_form(b);
    require_same_chart(a, b);
    TensorField r = zero_form(a.chart(), a.lower() + b.lower());
    if (static_cast<std::size_t>(a.lower() + b.lower()) > a.dim()) return r;
    Index merged;
    for (const auto& [ia, x] : a.components())
        for (const auto& [ib, y] : b.components()) {
            int s = shuffle_sign(ia, ib, merged);
            if (s == 0) continue;
            ScalarField v = x * y;
            r.add(merged, s > 0 ? v : -v);
        }
    return r;
}

ScalarField evaluate_form(const TensorField& omega, const std::vector<TensorField>& vectors) {
    require_form(omega);
    if (static_cast<int>(vectors.size()) != omega.lower()) throw InputError("form arity mismatch");
    for (const auto& v : vectors) {
        require_vector(v, "form argument");
        require_same_chart(omega, v);
    }
    ScalarField total = omega.chart().zero();
    std::size_t q = vectors.size();
    for (const auto& [idx, c] : omega.components()) {
        std::vector<std::vector<ScalarField>> m(q, std::vector<ScalarField>(q));
        for (std::size_t k = 0; k < q; ++k)
            for (std::size_t l = 0; l < q; ++l) m[k][l] = vectors[k].get({idx[l]});
        ScalarField det = determinant_small(m);
        if (!det.is_zero()) total += c * det;
    }
    return total;
}

TensorField lie_derivative_02(const TensorField& v, const TensorField& g) {
    require_vector(v, "direction");
    if (g.upper() != 0 || g.lower() != 2) throw InputError("lie_derivative_02 requires a (0,2) tensor");
    require_same_chart(v, g);
    int n = static_cast<int>(g.dim());
    std::vector<std::vector<ScalarField>> dv(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) dv[static_cast<std::size_t>(k)].push_back(v.get({k}).derivative(static_cast<std::size_t>(i)));
    TensorField r(g.chart(), 0, 2, g.symmetry());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (g.symmetry() != Symmetry::none && j < i) continue;
            ScalarField x = directional(v, g.get({i, j}));
            for (int k = 0; k < n; ++k) {
                const ScalarField& dki = dv[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
                const ScalarField& dkj = dv[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                if (!dki.is_zero()) x += g.get({k, j}) * dki;
                if (!dkj.is_zero()) x += g.get({i, k}) * dkj;
            }
            r.set({i, j}, x);
        }
    return r;
}

TensorField covariant_derivative(const TensorField& t, const ConnectionCoefficients& nabla) {
    if (!(t.chart() == nabla.chart())) throw InputError("chart mismatch");
    int p = t.upper(), q = t.lower();
    bool ok = (p == 1 && q == 1) || (p == 0 && q == 2) || (p == 2 && q == 0);
    if (!ok) throw UnsupportedError("covariant derivative supports valences (1,1), (0,2) and (2,0)");
    int n = static_cast<int>(t.dim());
    TensorField r(t.chart(), p, q + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < n; ++a) {
                ScalarField x = t.get({i, j}).derivative(static_cast<std::size_t>(a));
                for (int l = 0; l < n; ++l) {
                    // Upper slots gain +Gamma, lower slots -Gamma.
                    const ScalarField& g_i = nabla(i, a, l);
                    const ScalarField& g_j = nabla(j, a, l);
                    const ScalarField& l_i = nabla(l, a, i);
                    const ScalarField& l_j = nabla(l, a, j);
                    if (p == 1) {
                        if (!g_i.is_zero()) x += g_i * t.get({l, j});
                        if (!l_j.is_zero()) x -= l_j * t.get({i, l});
                    } else if (p == 0) {
                        if (!l_i.is_zero()) x -= l_i * t.get({l, j});
                        if (!l_j.is_zero()) x -= l_j * t.get({i, l});
                    } else {
                        if (!g_i.is_zero()) x += g_i * t.get({l, j});
                        if (!g_j.is_zero()) x += g_j * t.get({i, l});
                    }
                }
                r.set({i, j, a}, x);
            }
    return r;
}

TensorField contract_last(const TensorField& nabla_t, const TensorField& v) {
    require_vector(v, "direction");
    require_same_chart(nabla_t, v);
    if (nabla_t.lower() < 1) throw InputError("contract_last needs a lower slot");
    TensorField r(nabla_t.chart(), nabla_t.upper(), nabla_t.lower() - 1);
    for (const auto& [k, x] : nabla_t.components()) {
        ScalarField va = v.get({k.back()});
        if (va.is_zero()) continue;
        Index head(k.begin(), k.end() - 1);
        r.add(head, x * va);
    }
    return r;
}

NumericTensor evaluate_at_point(const TensorField& t, const Point& point) {
    if (point.size() != t.dim()) throw InputError("point dimension does not match chart");
    NumericTensor out{t.upper(), t.lower(), {}};
    for (const auto& [k, x] : t.components()) {
        Rational v = x.evaluate(point);
        if (!v.is_zero()) out.comps.emplace(k, v);
    }
    return out;
}

Matrix<Rational> evaluate_matrix(const Matrix<ScalarField>& m, const Point& point) {
    return m.map([&](const ScalarField& x) { return x.evaluate(point); });
}

Matrix<ScalarField> lift_matrix(const Chart& chart, const Matrix<Rational>& m) {
    return m.map([&](const Rational& x) { return chart.constant(x); });
}

}  // namespace nij
