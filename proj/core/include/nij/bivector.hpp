#pragma once

#include <array>
#include <optional>
#include <vector>

#include "nij/distribution.hpp"
#include "nij/tensor.hpp"

namespace nij {

/// Restriction of a symmetric or antisymmetric (2,0) tensor to its image W,
/// expressed in the basis w_k = Theta dx^{c_k} = Theta(., dx^{c_k}) of W
/// taken from pivot columns c_1 < ... < c_r. With S = Theta[c, c]:
///   restriction Theta_W = (S^T)^{-1} (so that Theta = sum Theta_W^{kl} w_k w_l),
///   inverse     omega(w_k, w_l) = S_{kl}, i.e. omega(Theta xi, .) = xi on W.
struct RestrictionResult {
    std::vector<int> pivots;
    std::vector<TensorField> basis;
    Matrix<ScalarField> restriction;
    Matrix<ScalarField> inverse;
    bool image_integrable = true;
    std::optional<BracketWitness> image_witness;
    /// Leafwise d(omega) = 0; nullopt when not applicable (symmetric Theta or
    /// non-integrable image).
    std::optional<bool> leafwise_closed;
    /// First (a, b, c) basis triple with d(omega)(w_a, w_b, w_c) != 0.
    std::optional<std::array<int, 3>> closedness_witness;
    std::optional<ScalarField> closedness_value;
};

/// Throws RankError if the rank is not r generically and at every sample, or
/// if det S vanishes at a sample.
RestrictionResult restriction_inverse(const TensorField& theta, int r, const std::vector<Point>& samples);

/// d(omega)(u, v, w) for a 2-form on W given by its Gram matrix in `basis`,
/// via the intrinsic formula. Brackets of basis fields must lie in W.
ScalarField leafwise_d(const std::vector<TensorField>& basis, const Matrix<ScalarField>& omega,
                       const std::vector<int>& pivots, int a, int b, int c);

}  // namespace nij
