#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nij/matrix.hpp"
#include "nij/rational.hpp"

namespace nij {

/// Block lengths d_1 >= ... >= d_m of a nilpotent endomorphism.
class JordanProfile {
public:
    JordanProfile() = default;
    /// Throws InputError unless the blocks are positive and weakly decreasing.
    explicit JordanProfile(std::vector<int> blocks);
    /// Parses "3 2 1" or "321" (single-digit blocks only in the compact form).
    static JordanProfile parse(const std::string& text);

    const std::vector<int>& blocks() const { return blocks_; }
    int dim() const;
    int longest() const { return blocks_.empty() ? 0 : blocks_.front(); }
    int shortest() const { return blocks_.empty() ? 0 : blocks_.back(); }
    /// rank Theta^i = n - sum_k min(i, d_k).
    int rank_of_power(int i) const;
    std::string str() const;

    friend bool operator==(const JordanProfile&, const JordanProfile&) = default;

private:
    std::vector<int> blocks_;
};

/// Profile from the rank sequence, or nullopt if Theta^n != 0.
std::optional<JordanProfile> jordan_profile(const Matrix<Rational>& theta);

/// d_1 = ... = d_{m-1}: all blocks equal, or the shorter length occurs once.
bool csd(const JordanProfile& profile);

/// Block-diagonal nilpotent matrix with Theta e_1 = 0, Theta e_i = e_{i-1} in each block.
Matrix<Rational> jordan_matrix(const JordanProfile& profile);

/// All profiles of dimension n, in reverse lexicographic order.
std::vector<JordanProfile> all_profiles(int n);

/// Monic minimal polynomial, coefficients from degree 0 upward.
std::vector<Rational> minimal_polynomial(const Matrix<Rational>& a);

/// True iff the minimal polynomial is squarefree.
bool complex_diagonalizable(const Matrix<Rational>& a);

}  // namespace nij
