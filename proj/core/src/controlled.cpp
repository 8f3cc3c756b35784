#include <algorithm>
#include <array>
#include <map>

#include "nij/error.hpp"
#include "nij/frame.hpp"
#include "nij/linalg.hpp"

namespace nij {

namespace {

// Unknowns C^k_{ij}, i in [1,p], j in [1,q], k in [1,r]. With coinciding
// sources only i < j is kept and C^k_{ji} = -C^k_{ij}, C^k_{ii} = 0.
class TripleUnknowns {
public:
    TripleUnknowns(int p, int q, int r, bool same) : p_(p), q_(q), r_(r), same_(same) {
        for (int i = 1; i <= p; ++i)
            for (int j = 1; j <= q; ++j) {
                if (same && j <= i) continue;
                for (int k = 1; k <= r; ++k) index_[{i, j, k}] = count_++;
            }
    }

    std::size_t count() const { return count_; }

    // Adds coeff * C^k_{ij} to a row; out-of-range entries vanish.
    void add(std::vector<Rational>& row, int i, int j, int k, const Rational& coeff) const {
        if (i < 1 || j < 1 || k < 1 || i > p_ || j > q_ || k > r_) return;
        Rational c = coeff;
        if (same_) {
            if (i == j) return;
            if (i > j) {
                std::swap(i, j);
                c = -c;
            }
        }
        row[index_.at({i, j, k})] += c;
    }

    std::vector<Rational> zero_row() const { return std::vector<Rational>(count_); }

private:
    int p_, q_, r_;
    bool same_;
    std::size_t count_ = 0;
    std::map<std::array<int, 3>, std::size_t> index_;
};

std::size_t nullity(const std::vector<std::vector<Rational>>& rows, std::size_t unknowns) {
    if (rows.empty()) return unknowns;
    Matrix<Rational> m(rows.size(), unknowns);
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < unknowns; ++b) m(a, b) = rows[a][b];
    return unknowns - rank(m);
}

}  // namespace

std::tuple<std::size_t, std::size_t, std::size_t> triple_solution_dims(int p, int q, int r, bool same_source) {
    if (p < 1 || q < 1 || r < 1) throw InputError("orbit lengths must be positive");
    if (same_source && p != q) throw InputError("coinciding sources need equal lengths");
    TripleUnknowns u(p, q, r, same_source);
    std::vector<std::vector<Rational>> rows;
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= q; ++j)
            for (int k = 3; k <= r + 2; ++k) {
                auto row = u.zero_row();
                u.add(row, i, j, k, Rational(1));
                u.add(row, i - 1, j - 1, k - 2, Rational(1));
                u.add(row, i - 1, j, k - 1, Rational(-1));
                u.add(row, i, j - 1, k - 1, Rational(-1));
                if (std::any_of(row.begin(), row.end(), [](const Rational& x) { return !x.is_zero(); }))
                    rows.push_back(std::move(row));
            }
    std::size_t n_dim = nullity(rows, u.count());
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= q; ++j)
            for (int k = std::max(i, j) + 1; k <= r; ++k) {
                auto row = u.zero_row();
                u.add(row, i, j, k, Rational(1));
                if (std::any_of(row.begin(), row.end(), [](const Rational& x) { return !x.is_zero(); }))
                    rows.push_back(std::move(row));
            }
    std::size_t ali_dim = nullity(rows, u.count());
    return {u.count(), n_dim, ali_dim};
}

ControlledVerdict controlled_type_verifier(const JordanProfile& profile, int n_cap) {
    if (profile.blocks().empty()) throw InputError("empty profile");
    if (profile.dim() > n_cap)
        throw InputError("profile dimension " + std::to_string(profile.dim()) + " exceeds the cap " + std::to_string(n_cap));
    ControlledVerdict v;
    v.profile = profile;
    v.csd = csd(profile);
    const auto& d = profile.blocks();
    int m = static_cast<int>(d.size());
    std::map<std::tuple<int, int, int, bool>, std::tuple<std::size_t, std::size_t, std::size_t>> cache;
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b)
            for (int c = 0; c < m; ++c) {
                if (c == a || c == b) continue;
                TripleCertificate t;
                t.a = a;
                t.b = b;
                t.c = c;
                t.p = d[static_cast<std::size_t>(a)];
                t.q = d[static_cast<std::size_t>(b)];
                t.r = d[static_cast<std::size_t>(c)];
                auto key = std::make_tuple(t.p, t.q, t.r, a == b);
                auto it = cache.find(key);
                if (it == cache.end()) it = cache.emplace(key, triple_solution_dims(t.p, t.q, t.r, a == b)).first;
                std::tie(t.unknowns, t.nijenhuis_dim, t.nijenhuis_ali_dim) = it->second;
                v.total_nijenhuis_dim += t.nijenhuis_dim;
                v.total_ali_dim += t.nijenhuis_ali_dim;
                v.family_contained = v.family_contained && t.contained();
                v.triples.push_back(t);
            }
    v.consistent = v.family_contained == v.csd;
    v.controlled = v.csd && v.family_contained;
    if (!v.csd) {
        v.witness = build_prop81_embedded(profile);
        v.witness_l = profile.shortest();
        v.witness_inl = kernel_integrability_frame(*v.witness, v.witness_l).witness;
    }
    return v;
}

}  // namespace nij
