#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "nij/distribution.hpp"
#include "nij/jordan.hpp"
#include "nij/tensor.hpp"

namespace nij {

/// Basis grouped into Theta-orbits with an antisymmetric bracket table.
///
/// Orbit lengths are positive and weakly decreasing. Within an orbit, element i (1-based)
/// has basis index offset(orbit) + i - 1, and Theta e_1 = 0, Theta e_i = e_{i-1}.
/// Coefficients are constant for Lie algebras, or functions on `chart` for
/// frame fields.
class LieFrameSpec {
public:
    explicit LieFrameSpec(std::vector<int> orbits, std::optional<Chart> chart = std::nullopt);

    int dim() const { return dim_; }
    const std::vector<int>& orbits() const { return orbits_; }
    const std::optional<Chart>& chart() const { return chart_; }

    /// 0-based basis index of element i (1-based) of an orbit.
    int basis(int orbit, int i) const;
    /// (orbit, 1-based position) of a basis index.
    std::pair<int, int> locate(int index) const;

    /// Sets [x, y] = value and [y, x] = -value. Throws on x == y with nonzero value.
    void set_bracket(int x, int y, const std::vector<ScalarField>& value);
    /// Dense coefficient vector of [x, y].
    std::vector<ScalarField> bracket(int x, int y) const;
    ScalarField coefficient(int x, int y, int k) const;
    /// Nonzero brackets keyed by (x, y) with x < y.
    const std::map<std::pair<int, int>, std::vector<ScalarField>>& table() const { return table_; }

    bool constant_coefficients() const;
    /// Theta in the basis: column i holds Theta e_i.
    Matrix<Rational> theta_matrix() const;
    std::string orbit_string() const;

    friend bool operator==(const LieFrameSpec& a, const LieFrameSpec& b);

private:
    ScalarField zero() const;

    std::vector<int> orbits_;
    std::vector<int> offsets_;
    int dim_ = 0;
    std::optional<Chart> chart_;
    std::map<std::pair<int, int>, std::vector<ScalarField>> table_;
};

/// C^k_{i,j}: coefficient of e^C_k in [e^A_i, e^B_j]; zero outside 1..length.
ScalarField c_coefficient(const LieFrameSpec& spec, int a, int b, int c, int i, int j, int k);

/// E^s_{i,j} = C^{i+j-s+1}_{i,j}.
ScalarField e_coefficient(const LieFrameSpec& spec, int a, int b, int c, int i, int j, int s);

/// Key (A, B, C, i, j, s) of an E-coefficient.
using EKey = std::tuple<int, int, int, int, int, int>;
using ECoefficients = std::map<EKey, ScalarField>;

/// Nonzero E-coefficients over all ordered orbit triples.
ECoefficients reindex_c_e(const LieFrameSpec& spec);

/// Inverse reindexing: rebuilds the bracket table from E-coefficients.
LieFrameSpec reindex_e_c(const ECoefficients& e, const std::vector<int>& orbits, std::optional<Chart> chart = std::nullopt);

/// Failing instance of a frame condition, in C and E indexing.
struct FrameWitness {
    int a = 0, b = 0, c = 0;
    int i = 0, j = 0, k = 0;
    int s() const { return i + j - k + 1; }
    ScalarField residual;
};

struct FrameCheck {
    bool holds = true;
    std::optional<FrameWitness> witness;
};

/// C^k_ij + C^{k-2}_{i-1,j-1} = C^{k-1}_{i-1,j} + C^{k-1}_{i,j-1} for k >= 3,
/// i <= p, j <= q, over all ordered orbit triples.
FrameCheck frame_nijenhuis_vanishes(const LieFrameSpec& spec);

/// Ker Theta^l integrable: C^k_ij = 0 whenever i, j <= l < k.
FrameCheck kernel_integrability_frame(const LieFrameSpec& spec, int l);

/// Every Ker Theta^l integrable: E^s_ij = 0 whenever i, j >= s.
FrameCheck kernel_integrability_all(const LieFrameSpec& spec);

/// Cyclic Jacobi sum over all basis triples; throws PreconditionError for
/// non-constant coefficients.
bool jacobi_check(const LieFrameSpec& spec);

/// Dimensions of the lower central series g, [g,g], [g,[g,g]], ... down to
/// 0, or until it stabilizes (not nilpotent).
std::vector<std::size_t> lower_central_series(const LieFrameSpec& spec);

/// Orbits (r, q, p) and [e_i, e~_j] = E^p_{i,j} e^_{i+j-p+1},
/// E^p_{i,j} = max(0, i + min(0, j - p)). Requires p <= q < r.
LieFrameSpec build_prop81(int p, int q, int r);

/// The same brackets placed on three orbits of a full profile: the longest
/// block, the second-shortest and the shortest. Requires the profile to violate csd.
LieFrameSpec build_prop81_embedded(const JordanProfile& profile);

/// Left-invariant realization of a 2-step nilpotent algebra.
struct Realization {
    Chart chart;
    /// e_a = d_a - 1/2 sum_{b,k} c^k_{ab} x^b d_k.
    std::vector<TensorField> frame;
    TensorField theta;
};

/// Throws UnsupportedError unless the coefficients are constant, Jacobi holds
/// and the algebra is 2-step nilpotent. Brackets are verified by lie_bracket.
Realization realize_on_chart(const LieFrameSpec& spec);

/// Structure functions of an explicit frame: [e_a, e_b] = sum_k C^k_{ab} e_k.
/// Throws InputError if the frame is degenerate.
LieFrameSpec frame_spec_from_fields(const std::vector<int>& orbits, const std::vector<TensorField>& frame);

/// Theta sending each frame field to its predecessor in the orbit.
TensorField theta_from_frame(const std::vector<int>& orbits, const std::vector<TensorField>& frame);

/// Per-triple certification data over the central-valued family.
struct TripleCertificate {
    int a = 0, b = 0, c = 0;
    int p = 0, q = 0, r = 0;
    std::size_t unknowns = 0;
    std::size_t nijenhuis_dim = 0;
    std::size_t nijenhuis_ali_dim = 0;
    bool contained() const { return nijenhuis_dim == nijenhuis_ali_dim; }
};

struct ControlledVerdict {
    JordanProfile profile;
    bool csd = false;
    bool controlled = false;
    /// Containment of the Nijenhuis solution space in the (ali) space, per triple.
    std::vector<TripleCertificate> triples;
    bool family_contained = true;
    /// family_contained == csd.
    bool consistent = true;
    std::size_t total_nijenhuis_dim = 0;
    std::size_t total_ali_dim = 0;
    /// Present for profiles violating csd.
    std::optional<LieFrameSpec> witness;
    std::optional<FrameWitness> witness_inl;
    int witness_l = 0;
};

/// Orbit lengths (p, q, r) of source, source and target and whether the two
/// sources coincide; returns (unknowns, dim N-space, dim N-and-ali space).
std::tuple<std::size_t, std::size_t, std::size_t> triple_solution_dims(int p, int q, int r, bool same_source);

/// Certifies control by N on the central-valued family (brackets between
/// source orbits A, B valued in a distinct target orbit C). Throws InputError
/// if the profile dimension exceeds n_cap.
ControlledVerdict controlled_type_verifier(const JordanProfile& profile, int n_cap);

}  // namespace nij
