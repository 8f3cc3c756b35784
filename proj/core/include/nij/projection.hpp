#pragma once

#include "nij/tensor.hpp"

namespace nij {

/// Projection of a torsion-free connection onto one parallelizing J with J^2 = c Id:
///   4c B_v w = 2J[nabla_v J]w + J[nabla_w J]v + [nabla_{Jw} J]v,
///   nabla-hat = nabla + B.
struct ConnectionProjection {
    /// B^i_{ab} = (B_{d_a} d_b)^i as a (1,2) tensor with key (i, a, b).
    TensorField b;
    /// B_v w = B_w v for all v, w.
    bool b_symmetric = false;
    /// N(J) = 0.
    bool nijenhuis_vanishes = false;
    ConnectionCoefficients hat;
    bool hat_torsion_free = false;
    /// nabla-hat J = 0 exactly.
    bool hat_parallel = false;
};

/// Throws InputError unless J^2 = c Id exactly with c != 0 and nabla is torsion-free.
ConnectionProjection diagonalizable_connection_projection(const TensorField& j, const Rational& c,
                                                          const ConnectionCoefficients& nabla);

}  // namespace nij
