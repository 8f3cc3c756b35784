#include "nij/frame.hpp"

#include <algorithm>

#include "nij/differential.hpp"
#include "nij/error.hpp"
#include "nij/linalg.hpp"

namespace nij {

LieFrameSpec::LieFrameSpec(std::vector<int> orbits, std::optional<Chart> chart)
    : orbits_(std::move(orbits)), chart_(std::move(chart)) {
    if (orbits_.empty()) throw InputError("frame needs at least one orbit");
    for (std::size_t o = 0; o < orbits_.size(); ++o) {
        int len = orbits_[o];
        if (len <= 0) throw InputError("orbit lengths must be positive");
        if (o > 0 && len > orbits_[o - 1]) throw InputError("orbit lengths must be weakly decreasing");
        offsets_.push_back(dim_);
        dim_ += len;
    }
    if (chart_ && chart_->dim() == 0) throw InputError("frame chart has no coordinates");
}

ScalarField LieFrameSpec::zero() const { return chart_ ? chart_->zero() : ScalarField(); }

int LieFrameSpec::basis(int orbit, int i) const {
    if (orbit < 0 || orbit >= static_cast<int>(orbits_.size())) throw InputError("orbit out of range");
    if (i < 1 || i > orbits_[static_cast<std::size_t>(orbit)]) throw InputError("orbit position out of range");
    return offsets_[static_cast<std::size_t>(orbit)] + i - 1;
}

std::pair<int, int> LieFrameSpec::locate(int index) const {
    if (index < 0 || index >= dim_) throw InputError("basis index out of range");
    for (std::size_t o = orbits_.size(); o-- > 0;)
        if (index >= offsets_[o]) return {static_cast<int>(o), index - offsets_[o] + 1};
    return {0, index + 1};
}

void LieFrameSpec::set_bracket(int x, int y, const std::vector<ScalarField>& value) {
    if (x < 0 || y < 0 || x >= dim_ || y >= dim_) throw InputError("bracket index out of range");
    if (static_cast<int>(value.size()) != dim_) throw InputError("bracket value has wrong length");
    bool zero_value = std::all_of(value.begin(), value.end(), [](const ScalarField& f) { return f.is_zero(); });
    if (x == y) {
        if (!zero_value) throw InputError("bracket of a basis element with itself must vanish");
        return;
    }
    std::vector<ScalarField> v = value;
    if (x > y) {
        std::swap(x, y);
        for (auto& f : v) f = -f;
    }
    if (zero_value)
        table_.erase({x, y});
    else
        table_[{x, y}] = std::move(v);
}

std::vector<ScalarField> LieFrameSpec::bracket(int x, int y) const {
    std::vector<ScalarField> out(static_cast<std::size_t>(dim_), zero());
    if (x == y) return out;
    bool flip = x > y;
    auto it = table_.find({std::min(x, y), std::max(x, y)});
    if (it == table_.end()) return out;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = flip ? -it->second[k] : it->second[k];
    return out;
}

ScalarField LieFrameSpec::coefficient(int x, int y, int k) const {
    if (x == y) return zero();
    auto it = table_.find({std::min(x, y), std::max(x, y)});
    if (it == table_.end()) return zero();
    const ScalarField& v = it->second[static_cast<std::size_t>(k)];
    return x > y ? -v : v;
}

bool LieFrameSpec::constant_coefficients() const {
    for (const auto& [key, v] : table_)
        for (const auto& f : v)
            if (!f.is_constant()) return false;
    return true;
}

Matrix<Rational> LieFrameSpec::theta_matrix() const {
    Matrix<Rational> m(static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_));
    for (std::size_t o = 0; o < orbits_.size(); ++o)
        for (int i = 2; i <= orbits_[o]; ++i)
            m(static_cast<std::size_t>(basis(static_cast<int>(o), i - 1)), static_cast<std::size_t>(basis(static_cast<int>(o), i))) = Rational(1);
    return m;
}

std::string LieFrameSpec::orbit_string() const {
    std::string s;
    for (std::size_t o = 0; o < orbits_.size(); ++o) s += (o ? " " : "") + std::to_string(orbits_[o]);
    return s;
}

bool operator==(const LieFrameSpec& a, const LieFrameSpec& b) {
    return a.orbits_ == b.orbits_ && a.chart_ == b.chart_ && a.table_ == b.table_;
}

ScalarField c_coefficient(const LieFrameSpec& spec, int a, int b, int c, int i, int j, int k) {
    const auto& o = spec.orbits();
    auto len = [&](int orbit) { return o.at(static_cast<std::size_t>(orbit)); };
    if (i < 1 || j < 1 || k < 1 || i > len(a) || j > len(b) || k > len(c))
        return spec.chart() ? spec.chart()->zero() : ScalarField();
    return spec.coefficient(spec.basis(a, i), spec.basis(b, j), spec.basis(c, k));
}

ScalarField e_coefficient(const LieFrameSpec& spec, int a, int b, int c, int i, int j, int s) {
    return c_coefficient(spec, a, b, c, i, j, i + j - s + 1);
}

ECoefficients reindex_c_e(const LieFrameSpec& spec) {
    ECoefficients out;
    for (int x = 0; x < spec.dim(); ++x)
        for (int y = 0; y < spec.dim(); ++y) {
            if (x == y) continue;
            auto [a, i] = spec.locate(x);
            auto [b, j] = spec.locate(y);
            auto v = spec.bracket(x, y);
            for (int z = 0; z < spec.dim(); ++z) {
                if (v[static_cast<std::size_t>(z)].is_zero()) continue;
                auto [c, k] = spec.locate(z);
                out[{a, b, c, i, j, i + j - k + 1}] = v[static_cast<std::size_t>(z)];
            }
        }
    return out;
}

LieFrameSpec reindex_e_c(const ECoefficients& e, const std::vector<int>& orbits, std::optional<Chart> chart) {
    LieFrameSpec spec(orbits, std::move(chart));
    ScalarField zero = spec.chart() ? spec.chart()->zero() : ScalarField();
    std::map<std::pair<int, int>, std::vector<ScalarField>> acc;
    for (const auto& [key, value] : e) {
        auto [a, b, c, i, j, s] = key;
        int k = i + j - s + 1;
        int x = spec.basis(a, i), y = spec.basis(b, j), z = spec.basis(c, k);
        auto& v = acc.try_emplace({x, y}, static_cast<std::size_t>(spec.dim()), zero).first->second;
        v[static_cast<std::size_t>(z)] = value;
    }
    for (const auto& [xy, v] : acc) {
        auto mirror = acc.find({xy.second, xy.first});
        if (mirror != acc.end())
            for (std::size_t z = 0; z < v.size(); ++z)
                if (!(v[z] == -mirror->second[z])) throw InputError("E-coefficients are not antisymmetric");
        if (xy.first < xy.second || mirror == acc.end()) spec.set_bracket(xy.first, xy.second, v);
    }
    return spec;
}

namespace {

int orbit_count(const LieFrameSpec& spec) { return static_cast<int>(spec.orbits().size()); }
int orbit_len(const LieFrameSpec& spec, int o) { return spec.orbits()[static_cast<std::size_t>(o)]; }

}  // namespace

FrameCheck frame_nijenhuis_vanishes(const LieFrameSpec& spec) {
    int m = orbit_count(spec);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                for (int i = 1; i <= orbit_len(spec, a); ++i)
                    for (int j = 1; j <= orbit_len(spec, b); ++j)
                        for (int k = 3; k <= orbit_len(spec, c) + 2; ++k) {
                            ScalarField res = c_coefficient(spec, a, b, c, i, j, k) +
                                              c_coefficient(spec, a, b, c, i - 1, j - 1, k - 2) -
                                              c_coefficient(spec, a, b, c, i - 1, j, k - 1) -
                                              c_coefficient(spec, a, b, c, i, j - 1, k - 1);
                            if (!res.is_zero()) return {false, FrameWitness{a, b, c, i, j, k, res}};
                        }
    return {};
}

FrameCheck kernel_integrability_frame(const LieFrameSpec& spec, int l) {
    if (l < 1) throw InputError("kernel power must be positive");
    int m = orbit_count(spec);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                for (int i = 1; i <= std::min(l, orbit_len(spec, a)); ++i)
                    for (int j = 1; j <= std::min(l, orbit_len(spec, b)); ++j)
                        for (int k = l + 1; k <= orbit_len(spec, c); ++k) {
                            ScalarField v = c_coefficient(spec, a, b, c, i, j, k);
                            if (!v.is_zero()) return {false, FrameWitness{a, b, c, i, j, k, v}};
                        }
    return {};
}

FrameCheck kernel_integrability_all(const LieFrameSpec& spec) {
    int m = orbit_count(spec);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                for (int i = 1; i <= orbit_len(spec, a); ++i)
                    for (int j = 1; j <= orbit_len(spec, b); ++j)
                        for (int k = std::max(i, j) + 1; k <= orbit_len(spec, c); ++k) {
                            ScalarField v = c_coefficient(spec, a, b, c, i, j, k);
                            if (!v.is_zero()) return {false, FrameWitness{a, b, c, i, j, k, v}};
                        }
    return {};
}

namespace {

Matrix<Rational> constants(const LieFrameSpec& spec, int x, int y) {
    Matrix<Rational> v(static_cast<std::size_t>(spec.dim()), 1);
    auto b = spec.bracket(x, y);
    for (std::size_t k = 0; k < b.size(); ++k) v(k, 0) = b[k].constant_value();
    return v;
}

void require_constant(const LieFrameSpec& spec, const char* what) {
    if (!spec.constant_coefficients())
        throw PreconditionError(std::string(what) + " requires constant structure coefficients");
}

// [u, e_z] for a constant vector u.
std::vector<Rational> bracket_with(const LieFrameSpec& spec, const std::vector<Rational>& u, int z) {
    std::vector<Rational> out(static_cast<std::size_t>(spec.dim()));
    for (int x = 0; x < spec.dim(); ++x) {
        const Rational& ux = u[static_cast<std::size_t>(x)];
        if (ux.is_zero()) continue;
        auto b = spec.bracket(x, z);
        for (std::size_t k = 0; k < out.size(); ++k)
            if (!b[k].is_zero()) out[k] += ux * b[k].constant_value();
    }
    return out;
}

}  // namespace

bool jacobi_check(const LieFrameSpec& spec) {
    require_constant(spec, "Jacobi check");
    int n = spec.dim();
    auto col = [&](const Matrix<Rational>& m) {
        std::vector<Rational> v;
        for (std::size_t k = 0; k < m.rows(); ++k) v.push_back(m(k, 0));
        return v;
    };
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z) {
                auto s1 = bracket_with(spec, col(constants(spec, x, y)), z);
                auto s2 = bracket_with(spec, col(constants(spec, y, z)), x);
                auto s3 = bracket_with(spec, col(constants(spec, z, x)), y);
                for (std::size_t k = 0; k < s1.size(); ++k)
                    if (!(s1[k] + s2[k] + s3[k]).is_zero()) return false;
            }
    return true;
}

std::vector<std::size_t> lower_central_series(const LieFrameSpec& spec) {
    require_constant(spec, "lower central series");
    int n = spec.dim();
    std::vector<std::vector<Rational>> basis;
    for (int x = 0; x < n; ++x) {
        std::vector<Rational> e(static_cast<std::size_t>(n));
        e[static_cast<std::size_t>(x)] = Rational(1);
        basis.push_back(std::move(e));
    }
    std::vector<std::size_t> dims{basis.size()};
    while (!basis.empty()) {
        std::vector<std::vector<Rational>> gens;
        for (const auto& u : basis)
            for (int z = 0; z < n; ++z) gens.push_back(bracket_with(spec, u, z));
        Matrix<Rational> m(gens.size(), static_cast<std::size_t>(n));
        for (std::size_t r = 0; r < gens.size(); ++r)
            for (std::size_t k = 0; k < gens[r].size(); ++k) m(r, k) = gens[r][k];
        auto pivots = rref(m);
        std::vector<std::vector<Rational>> next;
        for (std::size_t r = 0; r < pivots.size(); ++r) next.emplace_back(m.row(r).begin(), m.row(r).end());
        if (next.size() == basis.size()) break;
        basis = std::move(next);
        dims.push_back(basis.size());
    }
    return dims;
}

LieFrameSpec build_prop81(int p, int q, int r) {
    if (p < 1 || !(p <= q && q < r)) throw InputError("construction requires 1 <= p <= q < r");
    LieFrameSpec spec({r, q, p});
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= q; ++j) {
            int e = std::max(0, i + std::min(0, j - p));
            if (e == 0) continue;
            std::vector<ScalarField> v(static_cast<std::size_t>(spec.dim()));
            v[static_cast<std::size_t>(spec.basis(0, i + j - p + 1))] = ScalarField(e);
            spec.set_bracket(spec.basis(2, i), spec.basis(1, j), v);
        }
    return spec;
}

LieFrameSpec build_prop81_embedded(const JordanProfile& profile) {
    if (csd(profile)) throw InputError("profile satisfies csd; no counterexample exists");
    const auto& d = profile.blocks();
    int m = static_cast<int>(d.size());
    int r = d.front(), q = d[static_cast<std::size_t>(m - 2)], p = d.back();
    LieFrameSpec small = build_prop81(p, q, r);
    LieFrameSpec spec(d);
    // Orbits of the small algebra: 0 -> 0, 1 -> m-2, 2 -> m-1.
    const int place[3] = {0, m - 2, m - 1};
    for (const auto& [xy, v] : small.table()) {
        auto [ox, ix] = small.locate(xy.first);
        auto [oy, iy] = small.locate(xy.second);
        std::vector<ScalarField> w(static_cast<std::size_t>(spec.dim()));
        for (int z = 0; z < small.dim(); ++z) {
            if (v[static_cast<std::size_t>(z)].is_zero()) continue;
            auto [oz, iz] = small.locate(z);
            w[static_cast<std::size_t>(spec.basis(place[oz], iz))] = v[static_cast<std::size_t>(z)];
        }
        spec.set_bracket(spec.basis(place[ox], ix), spec.basis(place[oy], iy), w);
    }
    return spec;
}

namespace {

Matrix<ScalarField> frame_matrix(const Chart& chart, const std::vector<TensorField>& frame) {
    std::size_t n = chart.dim();
    if (frame.size() != n) throw InputError("frame size does not match chart dimension");
    Matrix<ScalarField> f(n, n, chart.zero());
    for (std::size_t a = 0; a < n; ++a) {
        if (frame[a].upper() != 1 || frame[a].lower() != 0) throw InputError("frame element is not a vector field");
        if (!(frame[a].chart() == chart)) throw InputError("frame chart mismatch");
        for (std::size_t k = 0; k < n; ++k) f(k, a) = frame[a].get({static_cast<int>(k)});
    }
    return f;
}

Matrix<ScalarField> orbit_shift(const std::vector<int>& orbits, const Chart& chart) {
    LieFrameSpec shape(orbits);
    return lift_matrix(chart, shape.theta_matrix());
}

}  // namespace

Realization realize_on_chart(const LieFrameSpec& spec) {
    if (!spec.constant_coefficients()) throw UnsupportedError("realization requires constant structure coefficients");
    if (!jacobi_check(spec)) throw UnsupportedError("structure constants violate the Jacobi identity");
    auto lcs = lower_central_series(spec);
    if (lcs.back() != 0) throw UnsupportedError("algebra is not nilpotent");
    if (lcs.size() > 3) throw UnsupportedError("realization is implemented for 2-step nilpotent algebras only");
    std::size_t n = static_cast<std::size_t>(spec.dim());
    Chart chart = Chart::standard(n, "x");
    Realization out{chart, {}, {}};
    for (int a = 0; a < spec.dim(); ++a) {
        std::vector<ScalarField> comps(n, chart.zero());
        comps[static_cast<std::size_t>(a)] = chart.constant(Rational(1));
        for (int b = 0; b < spec.dim(); ++b) {
            auto v = spec.bracket(a, b);
            for (std::size_t k = 0; k < n; ++k)
                if (!v[k].is_zero())
                    comps[k] -= chart.constant(v[k].constant_value() / Rational(2)) * chart.coordinate(static_cast<std::size_t>(b));
        }
        out.frame.push_back(TensorField::vector_field(chart, comps));
    }
    for (int a = 0; a < spec.dim(); ++a)
        for (int b = a + 1; b < spec.dim(); ++b) {
            TensorField expect(chart, 1, 0);
            auto v = spec.bracket(a, b);
            for (std::size_t k = 0; k < n; ++k)
                if (!v[k].is_zero()) expect += chart.constant(v[k].constant_value()) * out.frame[k];
            if (!(lie_bracket(out.frame[static_cast<std::size_t>(a)], out.frame[static_cast<std::size_t>(b)]) == expect))
                throw Error("realized frame does not reproduce the structure constants");
        }
    out.theta = theta_from_frame(spec.orbits(), out.frame);
    return out;
}

LieFrameSpec frame_spec_from_fields(const std::vector<int>& orbits, const std::vector<TensorField>& frame) {
    if (frame.empty()) throw InputError("empty frame");
    const Chart& chart = frame.front().chart();
    Matrix<ScalarField> f = frame_matrix(chart, frame);
    Matrix<ScalarField> finv = inverse(f);
    LieFrameSpec spec(orbits, chart);
    if (static_cast<std::size_t>(spec.dim()) != chart.dim()) throw InputError("orbit lengths do not sum to the chart dimension");
    std::size_t n = chart.dim();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            TensorField br = lie_bracket(frame[a], frame[b]);
            std::vector<ScalarField> c(n, chart.zero());
            for (const auto& [idx, x] : br.components())
                for (std::size_t k = 0; k < n; ++k) {
                    const ScalarField& fk = finv(k, static_cast<std::size_t>(idx[0]));
                    if (!fk.is_zero()) c[k] += fk * x;
                }
            spec.set_bracket(static_cast<int>(a), static_cast<int>(b), c);
        }
    return spec;
}

TensorField theta_from_frame(const std::vector<int>& orbits, const std::vector<TensorField>& frame) {
    if (frame.empty()) throw InputError("empty frame");
    const Chart& chart = frame.front().chart();
    Matrix<ScalarField> f = frame_matrix(chart, frame);
    Matrix<ScalarField> s = orbit_shift(orbits, chart);
    if (s.rows() != chart.dim()) throw InputError("orbit lengths do not sum to the chart dimension");
    return TensorField::endomorphism(chart, f * s * inverse(f));
}

}  // namespace nij
