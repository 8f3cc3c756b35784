#include "nij/tensor.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "nij/error.hpp"

namespace nij {

Chart::Chart(std::vector<std::string> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw InputError("chart must have at least one coordinate");
    std::set<std::string> seen;
    for (const auto& c : coords_) {
        if (c.empty()) throw InputError("coordinate names must be nonempty");
        if (!(std::isalpha(static_cast<unsigned char>(c[0])) || c[0] == '_'))
            throw InputError("coordinate name '" + c + "' must start with a letter");
        for (char ch : c)
            if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
                throw InputError("coordinate name '" + c + "' contains an invalid character");
        if (!seen.insert(c).second) throw InputError("duplicate coordinate name '" + c + "'");
    }
}

Chart Chart::standard(std::size_t n, const std::string& prefix) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
    return Chart(std::move(names));
}

std::optional<std::size_t> Chart::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (coords_[i] == name) return i;
    return std::nullopt;
}

TensorField::TensorField(Chart chart, int p, int q, Symmetry sym)
    : chart_(std::move(chart)), p_(p), q_(q), sym_(sym) {
    if (p < 0 || q < 0) throw InputError("negative valence");
    if (sym != Symmetry::none && q < 2 && p < 2) sym_ = Symmetry::none;
}

TensorField TensorField::vector_field(const Chart& chart, const std::vector<ScalarField>& comps) {
    if (comps.size() != chart.dim()) throw InputError("vector field arity does not match chart");
    TensorField t(chart, 1, 0);
    for (std::size_t i = 0; i < comps.size(); ++i) t.set({static_cast<int>(i)}, comps[i]);
    return t;
}

TensorField TensorField::one_form(const Chart& chart, const std::vector<ScalarField>& comps) {
    if (comps.size() != chart.dim()) throw InputError("1-form arity does not match chart");
    TensorField t(chart, 0, 1);
    for (std::size_t i = 0; i < comps.size(); ++i) t.set({static_cast<int>(i)}, comps[i]);
    return t;
}

TensorField TensorField::coordinate_field(const Chart& chart, int i) {
    TensorField t(chart, 1, 0);
    t.set({i}, chart.constant(Rational(1)));
    return t;
}

TensorField TensorField::coordinate_form(const Chart& chart, int i) {
    TensorField t(chart, 0, 1);
    t.set({i}, chart.constant(Rational(1)));
    return t;
}

TensorField TensorField::endomorphism(const Chart& chart, const Matrix<ScalarField>& m) {
    if (m.rows() != chart.dim() || m.cols() != chart.dim()) throw InputError("endomorphism matrix size mismatch");
    TensorField t(chart, 1, 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t.set({static_cast<int>(i), static_cast<int>(j)}, m(i, j));
    return t;
}

TensorField TensorField::bilinear(const Chart& chart, const Matrix<ScalarField>& m, bool contravariant,
                                  Symmetry sym) {
    std::size_t n = chart.dim();
    if (m.rows() != n || m.cols() != n) throw InputError("bilinear matrix size mismatch");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            if (sym == Symmetry::symmetric && !(m(i, j) == m(j, i)))
                throw InputError("matrix is not symmetric");
            if (sym == Symmetry::antisymmetric && !(m(i, j) == -m(j, i)))
                throw InputError("matrix is not antisymmetric");
        }
    TensorField t(chart, contravariant ? 2 : 0, contravariant ? 0 : 2, sym);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (sym != Symmetry::none && j < i) continue;
            if (sym == Symmetry::antisymmetric && i == j) continue;
            t.set({static_cast<int>(i), static_cast<int>(j)}, m(i, j));
        }
    return t;
}

void TensorField::check_index(const Index& idx) const {
    if (static_cast<int>(idx.size()) != p_ + q_)
        throw InputError("index arity " + std::to_string(idx.size()) + " does not match valence (" +
                         std::to_string(p_) + "," + std::to_string(q_) + ")");
    for (int i : idx)
        if (i < 0 || static_cast<std::size_t>(i) >= dim()) throw InputError("index out of range");
}

int TensorField::canonicalize(Index& idx) const {
    if (sym_ == Symmetry::none) return 1;
    auto first = idx.begin();
    auto last = idx.end();
    if (q_ >= 2) first += p_;
    else last = idx.begin() + p_;
    if (sym_ == Symmetry::symmetric) {
        std::sort(first, last);
        return 1;
    }
    // Insertion sort tracking the parity of transpositions.
    int sign = 1;
    for (auto it = first + 1; it < last; ++it)
        for (auto jt = it; jt > first && *(jt - 1) > *jt; --jt) {
            std::iter_swap(jt - 1, jt);
            sign = -sign;
        }
    for (auto it = first + 1; it < last; ++it)
        if (*it == *(it - 1)) return 0;
    return sign;
}

ScalarField TensorField::get(const Index& idx) const {
    check_index(idx);
    Index k = idx;
    int s = canonicalize(k);
    if (s == 0) return chart_.zero();
    auto it = comps_.find(k);
    if (it == comps_.end()) return chart_.zero();
    return s > 0 ? it->second : -it->second;
}

void TensorField::set(const Index& idx, const ScalarField& v) {
    check_index(idx);
    Index k = idx;
    int s = canonicalize(k);
    if (s == 0) {
        if (!v.is_zero()) throw InputError("nonzero component on a repeated antisymmetric index");
        return;
    }
    if (v.is_zero()) {
        comps_.erase(k);
        return;
    }
    comps_[k] = s > 0 ? v : -v;
}

void TensorField::add(const Index& idx, const ScalarField& v) {
    if (v.is_zero()) return;
    check_index(idx);
    Index k = idx;
    int s = canonicalize(k);
    if (s == 0) throw InputError("nonzero component on a repeated antisymmetric index");
    auto it = comps_.find(k);
    ScalarField add = s > 0 ? v : -v;
    if (it == comps_.end()) {
        comps_.emplace(k, add);
        return;
    }
    it->second += add;
    if (it->second.is_zero()) comps_.erase(it);
}

void TensorField::check_same(const TensorField& o) const {
    if (!(chart_ == o.chart_)) throw InputError("chart mismatch");
    if (p_ != o.p_ || q_ != o.q_) throw InputError("valence mismatch");
}

TensorField TensorField::operator-() const {
    TensorField r = *this;
    for (auto& [k, v] : r.comps_) v = -v;
    return r;
}

TensorField& TensorField::operator+=(const TensorField& o) {
    check_same(o);
    if (sym_ == o.sym_) {
        for (const auto& [k, v] : o.comps_) add(k, v);
        return *this;
    }
    // Mixed symmetry: fall back to the unconstrained representation.
    TensorField full(chart_, p_, q_);
    std::size_t total = 1;
    for (int i = 0; i < p_ + q_; ++i) total *= dim();
    Index idx(static_cast<std::size_t>(p_ + q_), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t f = flat;
        for (int i = p_ + q_ - 1; i >= 0; --i) {
            idx[static_cast<std::size_t>(i)] = static_cast<int>(f % dim());
            f /= dim();
        }
        full.set(idx, get(idx) + o.get(idx));
    }
    return *this = std::move(full);
}

TensorField& TensorField::operator-=(const TensorField& o) { return *this += -o; }

TensorField operator*(const ScalarField& f, const TensorField& t) {
    TensorField r(t.chart_, t.p_, t.q_, t.sym_);
    if (f.is_zero()) return r;
    for (const auto& [k, v] : t.comps_) {
        ScalarField x = f * v;
        if (!x.is_zero()) r.comps_.emplace(k, std::move(x));
    }
    return r;
}

bool operator==(const TensorField& a, const TensorField& b) {
    if (!(a.chart_ == b.chart_) || a.p_ != b.p_ || a.q_ != b.q_) return false;
    if (a.sym_ == b.sym_) {
        for (const auto& [k, v] : a.comps_)
            if (!(b.get(k) == v)) return false;
        for (const auto& [k, v] : b.comps_)
            if (!(a.get(k) == v)) return false;
        return true;
    }
    return (a - b).is_zero();
}

std::vector<ScalarField> TensorField::as_vector() const {
    if (p_ + q_ != 1) throw InputError("as_vector requires valence (1,0) or (0,1)");
    std::vector<ScalarField> v(dim(), chart_.zero());
    for (const auto& [k, x] : comps_) v[static_cast<std::size_t>(k[0])] = x;
    return v;
}

Matrix<ScalarField> TensorField::as_matrix() const {
    if (p_ + q_ != 2) throw InputError("as_matrix requires a rank-2 tensor");
    Matrix<ScalarField> m(dim(), dim(), chart_.zero());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) m(i, j) = get({static_cast<int>(i), static_cast<int>(j)});
    return m;
}

std::string TensorField::key_string(const Index& idx) const {
    std::string s;
    for (int i = 0; i < p_; ++i) {
        if (i) s += ',';
        s += std::to_string(idx[static_cast<std::size_t>(i)] + 1);
    }
    s += ';';
    for (int i = 0; i < q_; ++i) {
        if (i) s += ',';
        s += std::to_string(idx[static_cast<std::size_t>(p_ + i)] + 1);
    }
    return s;
}

std::string TensorField::str() const {
    if (comps_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : comps_) {
        if (!first) os << "; ";
        first = false;
        os << key_string(k) << ": " << v.str(chart_.coords());
    }
    return os.str();
}

ConnectionCoefficients::ConnectionCoefficients(Chart chart)
    : chart_(std::move(chart)), gamma_(chart_.dim() * chart_.dim() * chart_.dim(), chart_.zero()) {}

ConnectionCoefficients ConnectionCoefficients::general(Chart chart, std::vector<ScalarField> gamma) {
    std::size_t n = chart.dim();
    if (gamma.size() != n * n * n) throw InputError("connection needs n^3 coefficients");
    ConnectionCoefficients c(std::move(chart));
    c.gamma_ = std::move(gamma);
    return c;
}

ConnectionCoefficients ConnectionCoefficients::torsion_free(Chart chart, std::vector<ScalarField> gamma) {
    ConnectionCoefficients c = general(std::move(chart), std::move(gamma));
    if (!c.is_torsion_free()) throw InputError("connection coefficients are not symmetric in the lower pair");
    return c;
}

bool ConnectionCoefficients::is_torsion_free() const {
    int n = static_cast<int>(chart_.dim());
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!((*this)(k, i, j) == (*this)(k, j, i))) return false;
    return true;
}

}  // namespace nij
