#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nij/matrix.hpp"
#include "nij/rational.hpp"
#include "nij/scalar_field.hpp"

namespace nij {

/// A single coordinate patch with named coordinates x^1..x^n.
class Chart {
public:
    Chart() = default;
    explicit Chart(std::vector<std::string> coords);
    /// Chart with coordinates prefix1, ..., prefixN.
    static Chart standard(std::size_t n, const std::string& prefix = "x");

    std::size_t dim() const { return coords_.size(); }
    const std::vector<std::string>& coords() const { return coords_; }
    std::optional<std::size_t> index_of(const std::string& name) const;

    ScalarField coordinate(std::size_t i) const { return ScalarField::variable(i, dim()); }
    ScalarField zero() const { return ScalarField(Polynomial(dim())); }
    ScalarField constant(const Rational& c) const { return ScalarField(Polynomial(c, dim())); }

    friend bool operator==(const Chart&, const Chart&) = default;

private:
    std::vector<std::string> coords_;
};

enum class Symmetry { none, symmetric, antisymmetric };

/// Multi-index: upper indices first, then lower; 0-based.
using Index = std::vector<int>;
using Point = std::vector<Rational>;

/// Tensor field of valence (p, q) with ScalarField components.
///
/// Components are stored sparsely. When a symmetry is declared it applies to
/// the lower block if q >= 2, otherwise to the upper block; only keys sorted
/// within that block are stored, and lookups of permuted keys pick up the
/// permutation sign for antisymmetric tensors.
class TensorField {
public:
    TensorField() = default;
    TensorField(Chart chart, int p, int q, Symmetry sym = Symmetry::none);

    static TensorField vector_field(const Chart& chart, const std::vector<ScalarField>& comps);
    static TensorField one_form(const Chart& chart, const std::vector<ScalarField>& comps);
    /// Coordinate field d/dx^i.
    static TensorField coordinate_field(const Chart& chart, int i);
    /// Coordinate 1-form dx^i.
    static TensorField coordinate_form(const Chart& chart, int i);
    /// (1,1) tensor with Theta^i_j = m(i, j).
    static TensorField endomorphism(const Chart& chart, const Matrix<ScalarField>& m);
    /// (0,2) or (2,0) tensor from a matrix; symmetry is checked.
    static TensorField bilinear(const Chart& chart, const Matrix<ScalarField>& m, bool contravariant,
                                Symmetry sym);

    const Chart& chart() const { return chart_; }
    std::size_t dim() const { return chart_.dim(); }
    int upper() const { return p_; }
    int lower() const { return q_; }
    Symmetry symmetry() const { return sym_; }
    bool is_form() const { return p_ == 0 && (q_ <= 1 || sym_ == Symmetry::antisymmetric); }
    int degree() const { return q_; }

    /// Component at an arbitrary (not necessarily canonical) index.
    ScalarField get(const Index& idx) const;
    ScalarField at(std::initializer_list<int> idx) const { return get(Index(idx)); }
    /// Sets a component; for symmetric tensors the whole orbit is set.
    /// Throws InputError for nonzero values on repeated antisymmetric indices.
    void set(const Index& idx, const ScalarField& v);
    void add(const Index& idx, const ScalarField& v);

    /// Nonzero components keyed by canonical index.
    const std::map<Index, ScalarField>& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    TensorField operator-() const;
    TensorField& operator+=(const TensorField& o);
    TensorField& operator-=(const TensorField& o);
    friend TensorField operator+(TensorField a, const TensorField& b) { return a += b; }
    friend TensorField operator-(TensorField a, const TensorField& b) { return a -= b; }
    friend TensorField operator*(const ScalarField& f, const TensorField& t);
    friend bool operator==(const TensorField& a, const TensorField& b);

    /// Components of a (1,0) or (0,1) tensor as a dense vector.
    std::vector<ScalarField> as_vector() const;
    /// Components of a (1,1), (0,2) or (2,0) tensor as a matrix.
    Matrix<ScalarField> as_matrix() const;

    /// Human-readable listing "key: value" with 1-based indices.
    std::string str() const;
    /// Wire key "u1,u2;l1,l2" (1-based) for a 0-based index.
    std::string key_string(const Index& idx) const;

private:
    /// Canonicalizes idx in place; returns the sign (0 if the component must vanish).
    int canonicalize(Index& idx) const;
    void check_same(const TensorField& o) const;
    void check_index(const Index& idx) const;

    Chart chart_;
    int p_ = 0;
    int q_ = 0;
    Symmetry sym_ = Symmetry::none;
    std::map<Index, ScalarField> comps_;
};

/// Tensor with Rational entries, produced by evaluation at a point.
struct NumericTensor {
    int p = 0;
    int q = 0;
    std::map<Index, Rational> comps;

    Rational get(const Index& idx) const {
        auto it = comps.find(idx);
        return it == comps.end() ? Rational(0) : it->second;
    }
};

/// Christoffel symbols gamma(k, i, j) = Gamma^k_{ij}, with
/// nabla_{d_i} d_j = Gamma^k_{ij} d_k.
class ConnectionCoefficients {
public:
    ConnectionCoefficients() = default;
    /// Zero coefficients on the chart.
    explicit ConnectionCoefficients(Chart chart);

    /// Validated torsion-free connection; throws InputError on asymmetry.
    static ConnectionCoefficients torsion_free(Chart chart, std::vector<ScalarField> gamma);
    /// No symmetry check (used for intermediate affine connections).
    static ConnectionCoefficients general(Chart chart, std::vector<ScalarField> gamma);

    const Chart& chart() const { return chart_; }
    const ScalarField& operator()(int k, int i, int j) const { return gamma_[flat(k, i, j)]; }
    ScalarField& operator()(int k, int i, int j) { return gamma_[flat(k, i, j)]; }
    bool is_torsion_free() const;

private:
    std::size_t flat(int k, int i, int j) const {
        std::size_t n = chart_.dim();
        return (static_cast<std::size_t>(k) * n + static_cast<std::size_t>(i)) * n + static_cast<std::size_t>(j);
    }

    Chart chart_;
    std::vector<ScalarField> gamma_;
};

}  // namespace nij
