#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nij/error.hpp"
#include "nij/frame.hpp"
#include "nij/tensor.hpp"

namespace nij::report {

/// Insertion-ordered so that reports are byte-deterministic.
using Json = nlohmann::ordered_json;

enum class Kind { tensor11, form, sym02, sym20, bivector, lie_algebra, construction };

std::string kind_name(Kind kind);

/// All schema violations found in one document, in document order.
class SchemaError : public InputError {
public:
    explicit SchemaError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

struct ConstructionSpec {
    /// prop81, affine-tangent, nin-form or product-extension.
    std::string name;
    /// p, q, r for prop81; n, q for nin-form; leaf_dim for product-extension.
    std::map<std::string, int> parameters;
    /// affine-tangent: vector fields spanning the distribution.
    std::vector<TensorField> generators;
    Matrix<ScalarField> g_leaf;
    Matrix<ScalarField> theta_leaf;
    /// Gamma^k_{ij} at (k*s + i)*s + j.
    std::vector<ScalarField> gamma_leaf;

    friend bool operator==(const ConstructionSpec&, const ConstructionSpec&) = default;
};

/// Validated input document.
struct AnalysisSpec {
    Kind kind = Kind::tensor11;
    std::optional<Chart> chart;
    /// The field for tensor kinds.
    std::optional<TensorField> tensor;
    /// Always set for sym02, sym20 and bivector after parsing.
    std::optional<int> rank;
    std::vector<Point> samples;
    std::optional<Matrix<Rational>> metric;
    int verbosity = 0;
    std::optional<LieFrameSpec> algebra;
    /// Explicit frame of a lie_algebra document (basis order).
    std::vector<TensorField> frame;
    std::optional<ConstructionSpec> construction;

    friend bool operator==(const AnalysisSpec&, const AnalysisSpec&) = default;
};

/// Throws SchemaError listing every violation, then PoleError if a component
/// has a pole at a sample, then RankError on rank inconsistencies.
AnalysisSpec parse_spec(const Json& doc);
/// Also reports malformed JSON as a SchemaError.
AnalysisSpec parse_spec(const std::string& text);

/// Canonical document: fixed key order, canonical component keys, rationals
/// and coefficients as strings.
Json serialize(const AnalysisSpec& spec);

/// Point as a list of rational strings.
Json point_json(const Point& p);
Json rational_matrix_json(const Matrix<Rational>& m);
Json field_matrix_json(const Matrix<ScalarField>& m, const Chart& chart);
/// Nonzero components keyed by wire key.
Json components_json(const TensorField& t);
/// First nonzero component as {"component": key, "value": expr}; null for zero.
Json first_component(const TensorField& t);

/// Label "orbit.position" (both 1-based) of a 0-based basis index.
std::string basis_label(const LieFrameSpec& spec, int index);

}  // namespace nij::report
