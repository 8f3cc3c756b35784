#include "nij/linalg.hpp"

#include <limits>

#include "nij/error.hpp"

namespace nij {

namespace {

std::size_t pivot_cost(const Rational&) { return 0; }

std::size_t pivot_cost(const ScalarField& x) {
    return static_cast<std::size_t>(x.degree()) * 64 + x.num().size() + x.den().size();
}

template <class T>
std::vector<std::size_t> rref_impl(Matrix<T>& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t best = m.rows();
        std::size_t best_cost = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = r; i < m.rows(); ++i) {
            if (m(i, c).is_zero()) continue;
            std::size_t cost = pivot_cost(m(i, c));
            if (cost < best_cost) {
                best = i;
                best_cost = cost;
            }
        }
        if (best == m.rows()) continue;
        m.swap_rows(r, best);
        T inv = T(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            T f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
std::vector<std::vector<T>> nullspace_impl(const Matrix<T>& a) {
    Matrix<T> m = a;
    auto pivots = rref_impl(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(m.cols(), T(0));
        v[f] = T(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
Matrix<T> inverse_impl(const Matrix<T>& a) {
    if (!a.is_square()) throw InputError("inverse of a non-square matrix");
    std::size_t n = a.rows();
    Matrix<T> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = T(1);
    }
    auto pivots = rref_impl(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw RankError("matrix is singular");
    Matrix<T> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

template <class T>
T determinant_impl(const Matrix<T>& a) {
    if (!a.is_square()) throw InputError("determinant of a non-square matrix");
    Matrix<T> m = a;
    std::size_t n = m.rows();
    T det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = n, best_cost = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = c; i < n; ++i)
            if (!m(i, c).is_zero() && pivot_cost(m(i, c)) < best_cost) {
                best = i;
                best_cost = pivot_cost(m(i, c));
            }
        if (best == n) return T(0);
        if (best != c) {
            m.swap_rows(c, best);
            det = -det;
        }
        det *= m(c, c);
        T inv = T(1) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            T f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j)
                if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
    auto q = a.divide_exact(b);
    if (!q) throw Error("internal: inexact division in fraction-free elimination");
    return *q;
}

}  // namespace

std::vector<std::size_t> rref(Matrix<Rational>& m) { return rref_impl(m); }
std::vector<std::size_t> rref(Matrix<ScalarField>& m) { return rref_impl(m); }

std::size_t rank(const Matrix<Rational>& m) {
    Matrix<Rational> c = m;
    return rref_impl(c).size();
}

std::vector<std::vector<Rational>> nullspace(const Matrix<Rational>& m) { return nullspace_impl(m); }
std::vector<std::vector<ScalarField>> nullspace(const Matrix<ScalarField>& m) { return nullspace_impl(m); }

Rational determinant(const Matrix<Rational>& m) { return determinant_impl(m); }
ScalarField determinant(const Matrix<ScalarField>& m) { return determinant_impl(m); }

Matrix<Rational> inverse(const Matrix<Rational>& m) { return inverse_impl(m); }
Matrix<ScalarField> inverse(const Matrix<ScalarField>& m) { return inverse_impl(m); }

std::optional<std::vector<ScalarField>> solve(const Matrix<ScalarField>& m, const std::vector<ScalarField>& b) {
    if (b.size() != m.rows()) throw InputError("right-hand side length mismatch");
    Matrix<ScalarField> aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto pivots = rref_impl(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    std::vector<ScalarField> x(m.cols(), ScalarField(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
    return x;
}

std::vector<ScalarField> clear_denominators(const std::vector<ScalarField>& v) {
    std::vector<Polynomial> dens;
    for (const auto& x : v) {
        if (x.is_zero() || x.den().is_constant()) continue;
        bool seen = false;
        for (const auto& d : dens)
            if (d == x.den()) seen = true;
        if (!seen) dens.push_back(x.den());
    }
    if (dens.empty()) return v;
    Polynomial prod(1);
    for (const auto& d : dens) prod = prod * d;
    ScalarField f(prod);
    std::vector<ScalarField> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x * f);
    return out;
}

std::size_t generic_rank(const Matrix<ScalarField>& m) {
    std::size_t rows = m.rows(), cols = m.cols();
    Matrix<Polynomial> p(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<ScalarField> row(m.row(i).begin(), m.row(i).end());
        row = clear_denominators(row);
        for (std::size_t j = 0; j < cols; ++j) {
            if (!row[j].is_polynomial()) throw Error("internal: denominator clearing failed");
            p(i, j) = row[j].num() * row[j].den().constant_term().inverse();
        }
    }
    Polynomial prev(1);
    std::size_t k = 0;
    for (; k < std::min(rows, cols); ++k) {
        std::size_t bi = rows, bj = cols, best = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < cols; ++j) {
                if (p(i, j).is_zero()) continue;
                std::size_t cost = static_cast<std::size_t>(p(i, j).total_degree()) * 64 + p(i, j).size();
                if (cost < best) {
                    best = cost;
                    bi = i;
                    bj = j;
                }
            }
        if (bi == rows) break;
        p.swap_rows(k, bi);
        p.swap_cols(k, bj);
        for (std::size_t i = k + 1; i < rows; ++i) {
            for (std::size_t j = k + 1; j < cols; ++j) {
                Polynomial v = p(k, k) * p(i, j) - p(i, k) * p(k, j);
                p(i, j) = exact_quotient(v, prev);
            }
            p(i, k) = Polynomial(0);
        }
        prev = p(k, k);
    }
    return k;
}

std::size_t rank_at(const Matrix<ScalarField>& m, const std::vector<Rational>& point) {
    Matrix<Rational> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).evaluate(point);
    return rank(r);
}

RankProfile rank_profile(const Matrix<ScalarField>& m, const std::vector<std::vector<Rational>>& samples) {
    RankProfile rp;
    rp.generic = generic_rank(m);
    for (const auto& s : samples) rp.at_samples.push_back(rank_at(m, s));
    return rp;
}

}  // namespace nij
