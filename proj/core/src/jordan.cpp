#include "nij/jordan.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

#include "nij/error.hpp"
#include "nij/linalg.hpp"

namespace nij {

JordanProfile::JordanProfile(std::vector<int> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw InputError("empty Jordan profile");
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i] <= 0) throw InputError("Jordan blocks must be positive");
        if (i > 0 && blocks_[i] > blocks_[i - 1]) throw InputError("Jordan blocks must be weakly decreasing");
    }
}

JordanProfile JordanProfile::parse(const std::string& text) {
    std::vector<int> blocks;
    bool spaced = text.find_first_of(" ,\t") != std::string::npos;
    if (spaced) {
        std::string t = text;
        std::replace(t.begin(), t.end(), ',', ' ');
        std::istringstream is(t);
        std::string tok;
        while (is >> tok) {
            for (char c : tok)
                if (!std::isdigit(static_cast<unsigned char>(c))) throw InputError("bad profile '" + text + "'");
            blocks.push_back(std::stoi(tok));
        }
    } else {
        for (char c : text) {
            if (!std::isdigit(static_cast<unsigned char>(c))) throw InputError("bad profile '" + text + "'");
            blocks.push_back(c - '0');
        }
    }
    return JordanProfile(std::move(blocks));
}

int JordanProfile::dim() const { return std::accumulate(blocks_.begin(), blocks_.end(), 0); }

int JordanProfile::rank_of_power(int i) const {
    int r = dim();
    for (int d : blocks_) r -= std::min(i, d);
    return r;
}

std::string JordanProfile::str() const {
    std::string s;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(blocks_[i]);
    }
    return s;
}

std::optional<JordanProfile> jordan_profile(const Matrix<Rational>& theta) {
    if (!theta.is_square()) throw InputError("jordan_profile needs a square matrix");
    int n = static_cast<int>(theta.rows());
    std::vector<int> ranks{n};
    Matrix<Rational> power = Matrix<Rational>::identity(theta.rows());
    for (int i = 1; i <= n; ++i) {
        power = power * theta;
        ranks.push_back(static_cast<int>(rank(power)));
    }
    if (ranks[static_cast<std::size_t>(n)] != 0) return std::nullopt;
    // at_least[i] = number of blocks of length >= i.
    std::vector<int> blocks;
    for (int i = 1; i <= n; ++i) {
        int at_least = ranks[static_cast<std::size_t>(i - 1)] - ranks[static_cast<std::size_t>(i)];
        int next = i < n ? ranks[static_cast<std::size_t>(i)] - ranks[static_cast<std::size_t>(i + 1)] : 0;
        for (int k = 0; k < at_least - next; ++k) blocks.push_back(i);
    }
    std::sort(blocks.rbegin(), blocks.rend());
    if (blocks.empty()) return std::nullopt;
    return JordanProfile(std::move(blocks));
}

bool csd(const JordanProfile& profile) {
    const auto& b = profile.blocks();
    for (std::size_t i = 1; i + 1 < b.size(); ++i)
        if (b[i] != b[0]) return false;
    return true;
}

Matrix<Rational> jordan_matrix(const JordanProfile& profile) {
    std::size_t n = static_cast<std::size_t>(profile.dim());
    Matrix<Rational> m(n, n);
    std::size_t offset = 0;
    for (int d : profile.blocks()) {
        for (int i = 1; i < d; ++i) m(offset + static_cast<std::size_t>(i) - 1, offset + static_cast<std::size_t>(i)) = 1;
        offset += static_cast<std::size_t>(d);
    }
    return m;
}

std::vector<JordanProfile> all_profiles(int n) {
    std::vector<JordanProfile> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int part = std::min(remaining, max_part); part >= 1; --part) {
            cur.push_back(part);
            rec(remaining - part, part);
            cur.pop_back();
        }
    };
    if (n > 0) rec(n, n);
    return out;
}

namespace {

using UPoly = std::vector<Rational>;

void trim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly poly_mod(UPoly a, const UPoly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
    }
    return a;
}

UPoly poly_gcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

std::vector<Rational> minimal_polynomial(const Matrix<Rational>& a) {
    if (!a.is_square()) throw InputError("minimal polynomial needs a square matrix");
    std::size_t n = a.rows();
    std::vector<Matrix<Rational>> powers{Matrix<Rational>::identity(n)};
    for (std::size_t k = 1; k <= n; ++k) {
        powers.push_back(powers.back() * a);
        Matrix<Rational> krylov(n * n, k + 1);
        for (std::size_t c = 0; c <= k; ++c)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) krylov(i * n + j, c) = powers[c](i, j);
        auto ns = nullspace(krylov);
        if (ns.empty()) continue;
        // The first dependency is one-dimensional and involves A^k.
        UPoly m = ns.front();
        Rational lead = m[k];
        for (auto& c : m) c /= lead;
        return m;
    }
    throw Error("internal: no minimal polynomial found");
}

bool complex_diagonalizable(const Matrix<Rational>& a) {
    UPoly m = minimal_polynomial(a);
    UPoly dm;
    for (std::size_t i = 1; i < m.size(); ++i) dm.push_back(m[i] * Rational(static_cast<long>(i)));
    UPoly g = poly_gcd(m, dm);
    return g.size() == 1;
}

}  // namespace nij
