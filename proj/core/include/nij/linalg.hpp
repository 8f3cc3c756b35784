#pragma once

#include <optional>
#include <vector>

#include "nij/matrix.hpp"
#include "nij/rational.hpp"
#include "nij/scalar_field.hpp"

namespace nij {

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(Matrix<Rational>& m);
std::vector<std::size_t> rref(Matrix<ScalarField>& m);

std::size_t rank(const Matrix<Rational>& m);

/// Basis of the right nullspace {x : m x = 0}, one vector per free column.
std::vector<std::vector<Rational>> nullspace(const Matrix<Rational>& m);
std::vector<std::vector<ScalarField>> nullspace(const Matrix<ScalarField>& m);

Rational determinant(const Matrix<Rational>& m);
ScalarField determinant(const Matrix<ScalarField>& m);

/// Inverse of a square matrix; throws RankError when singular.
Matrix<Rational> inverse(const Matrix<Rational>& m);
Matrix<ScalarField> inverse(const Matrix<ScalarField>& m);

/// Some solution of m x = b, or nullopt when the system is inconsistent.
std::optional<std::vector<ScalarField>> solve(const Matrix<ScalarField>& m, const std::vector<ScalarField>& b);

/// Rank over the rational function field. Rows are cleared of denominators
/// and reduced by fraction-free (Bareiss) elimination with full pivoting on
/// the lowest-degree entry.
std::size_t generic_rank(const Matrix<ScalarField>& m);

/// Rank of the matrix evaluated at a point; throws PoleError on a pole.
std::size_t rank_at(const Matrix<ScalarField>& m, const std::vector<Rational>& point);

/// Multiplies a vector by the product of its distinct denominators, so the
/// result spans the same line with polynomial entries.
std::vector<ScalarField> clear_denominators(const std::vector<ScalarField>& v);

/// Rank report for the constant-rank policy: generic rank plus rank at each sample.
struct RankProfile {
    std::size_t generic = 0;
    std::vector<std::size_t> at_samples;
    bool constant() const {
        for (auto r : at_samples)
            if (r != generic) return false;
        return true;
    }
};

RankProfile rank_profile(const Matrix<ScalarField>& m, const std::vector<std::vector<Rational>>& samples);

}  // namespace nij
