#pragma once

#include <functional>
#include <vector>

#include "nij/linalg.hpp"
#include "nij/tensor.hpp"

// Independent reference computations written directly from component
// formulas. They share only the scalar arithmetic with the library.
namespace oracle {

using nij::ScalarField;
using nij::TensorField;

inline std::vector<ScalarField> comps(const TensorField& v) {
    std::vector<ScalarField> out;
    for (std::size_t i = 0; i < v.dim(); ++i) out.push_back(v.get({static_cast<int>(i)}));
    return out;
}

/// [v, w]^k = v^i d_i w^k - w^i d_i v^k.
inline std::vector<ScalarField> bracket(const TensorField& v, const TensorField& w) {
    auto a = comps(v), b = comps(w);
    std::size_t n = a.size();
    std::vector<ScalarField> out(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) out[k] += a[i] * b[k].derivative(i) - b[i] * a[k].derivative(i);
    return out;
}

/// N^i_{jk} = T^i_l (d_j T^l_k - d_k T^l_j) - T^l_j d_l T^i_k + T^l_k d_l T^i_j.
inline ScalarField nijenhuis(const nij::Matrix<ScalarField>& t, std::size_t i, std::size_t j, std::size_t k) {
    ScalarField s;
    std::size_t n = t.rows();
    for (std::size_t l = 0; l < n; ++l) {
        s += t(i, l) * (t(l, k).derivative(j) - t(l, j).derivative(k));
        s -= t(l, j) * t(i, k).derivative(l);
        s += t(l, k) * t(i, j).derivative(l);
    }
    return s;
}

/// (L_v g)_{ij} = v^k d_k g_ij + g_kj d_i v^k + g_ik d_j v^k.
inline ScalarField lie_derivative(const std::vector<ScalarField>& v, const nij::Matrix<ScalarField>& g, std::size_t i,
                                  std::size_t j) {
    ScalarField s;
    for (std::size_t k = 0; k < v.size(); ++k)
        s += v[k] * g(i, j).derivative(k) + g(k, j) * v[k].derivative(i) + g(i, k) * v[k].derivative(j);
    return s;
}

/// Levi-Civita symbols Gamma^k_{ij} = 1/2 g^{kl}(d_i g_lj + d_j g_li - d_l g_ij), flattened (k*n+i)*n+j.
inline std::vector<ScalarField> levi_civita(const nij::Matrix<ScalarField>& g) {
    std::size_t n = g.rows();
    auto ginv = nij::inverse(g);
    std::vector<ScalarField> out(n * n * n);
    ScalarField half(nij::Rational(1, 2));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                ScalarField s;
                for (std::size_t l = 0; l < n; ++l)
                    if (!ginv(k, l).is_zero())
                        s += ginv(k, l) * (g(l, j).derivative(i) + g(l, i).derivative(j) - g(i, j).derivative(l));
                out[(k * n + i) * n + j] = half * s;
            }
    return out;
}

/// All ordered tuples in [0, n)^len.
inline void for_each_tuple(int n, int len, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> t(static_cast<std::size_t>(len), 0);
    for (;;) {
        f(t);
        int p = len - 1;
        while (p >= 0 && ++t[static_cast<std::size_t>(p)] == n) t[static_cast<std::size_t>(p--)] = 0;
        if (p < 0) return;
    }
}

/// beta^{ij} = A^{i i2..im} B^{j j2..jm} g_{i2 j2} ... g_{im jm}, all ordered tuples.
inline nij::Matrix<nij::ScalarField> contraction(const TensorField& a, const TensorField& b, const nij::Matrix<nij::Rational>& g) {
    int n = static_cast<int>(a.dim());
    int m = a.upper();
    nij::Matrix<ScalarField> out(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ScalarField s;
            for_each_tuple(n, m - 1, [&](const std::vector<int>& it) {
                std::vector<int> ka{i};
                ka.insert(ka.end(), it.begin(), it.end());
                ScalarField av = a.get(ka);
                if (av.is_zero()) return;
                for_each_tuple(n, m - 1, [&](const std::vector<int>& jt) {
                    nij::Rational w(1);
                    for (std::size_t t = 0; t < it.size() && !w.is_zero(); ++t)
                        w *= g(static_cast<std::size_t>(it[t]), static_cast<std::size_t>(jt[t]));
                    if (w.is_zero()) return;
                    std::vector<int> kb{j};
                    kb.insert(kb.end(), jt.begin(), jt.end());
                    ScalarField bv = b.get(kb);
                    if (!bv.is_zero()) s += av * bv * ScalarField(w);
                });
            });
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = s;
        }
    return out;
}

}  // namespace oracle
