#include "nij/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "nij/error.hpp"

namespace nij {

namespace {

std::uint64_t degree_of(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

Exponents padded(const Exponents& e, std::size_t n) {
    Exponents out = e;
    out.resize(n, 0);
    return out;
}

}  // namespace

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
    auto da = degree_of(a), db = degree_of(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Polynomial::Polynomial(const Rational& c, std::size_t nvars) : nvars_(nvars) {
    if (!c.is_zero()) terms_.emplace(Exponents(nvars, 0), c);
}

Polynomial Polynomial::variable(std::size_t index, std::size_t nvars) {
    if (index >= nvars) throw InputError("variable index out of range");
    Exponents e(nvars, 0);
    e[index] = 1;
    return monomial(Rational(1), std::move(e));
}

Polynomial Polynomial::monomial(const Rational& coeff, Exponents exps) {
    Polynomial p(exps.size());
    if (!coeff.is_zero()) p.terms_.emplace(std::move(exps), coeff);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

Rational Polynomial::constant_term() const {
    if (terms_.empty()) return Rational(0);
    const auto& [e, c] = *terms_.begin();
    return degree_of(e) == 0 ? c : Rational(0);
}

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(degree_of(terms_.rbegin()->first));
}

void Polynomial::align(std::size_t nvars) {
    if (nvars <= nvars_) return;
    TermMap t;
    for (auto& [e, c] : terms_) t.emplace(padded(e, nvars), c);
    terms_ = std::move(t);
    nvars_ = nvars;
}

Polynomial Polynomial::promoted(std::size_t nvars) const {
    Polynomial p = *this;
    p.align(nvars);
    return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial p = *this;
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    align(o.nvars_);
    if (o.nvars_ == nvars_) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
    } else {
        for (const auto& [e, c] : o.terms_) add_term(padded(e, nvars_), c);
    }
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    align(o.nvars_);
    for (const auto& [e, c] : o.terms_) add_term(o.nvars_ == nvars_ ? e : padded(e, nvars_), -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::size_t n = std::max(a.nvars_, b.nvars_);
    Polynomial out(n);
    if (a.is_zero() || b.is_zero()) return out;
    Exponents e(n, 0);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < n; ++i)
                e[i] = (i < ea.size() ? ea[i] : 0) + (i < eb.size() ? eb[i] : 0);
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ == b.nvars_) return a.terms_ == b.terms_;
    std::size_t n = std::max(a.nvars_, b.nvars_);
    return a.promoted(n).terms_ == b.promoted(n).terms_;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result(Rational(1), nvars_);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e > 0) base = base * base;
    }
    return result;
}

Polynomial Polynomial::derivative(std::size_t index) const {
    Polynomial out(nvars_);
    if (index >= nvars_) return out;
    for (const auto& [e, c] : terms_) {
        if (e[index] == 0) continue;
        Exponents d = e;
        Rational k(static_cast<long>(d[index]));
        d[index] -= 1;
        out.add_term(d, c * k);
    }
    return out;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
    if (point.size() < nvars_) throw InputError("evaluation point has too few coordinates");
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t *= point[i].pow(e[i]);
        sum += t;
    }
    return sum;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& d) const {
    if (d.is_zero()) throw PoleError("polynomial division by zero");
    std::size_t n = std::max(nvars_, d.nvars_);
    Polynomial rem = promoted(n);
    Polynomial div = d.promoted(n);
    Polynomial quot(n);
    const auto& [dle, dlc] = div.leading_term();
    while (!rem.is_zero()) {
        const auto& [rle, rlc] = rem.leading_term();
        Exponents q(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rle[i] < dle[i]) return std::nullopt;
            q[i] = rle[i] - dle[i];
        }
        Polynomial t = monomial(rlc / dlc, std::move(q));
        quot += t;
        rem -= t * div;
    }
    return quot;
}

Rational Polynomial::content() const {
    if (terms_.empty()) return Rational(0);
    mpz_class g = 0, l = 1;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.raw().get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.raw().get_den_mpz_t());
    }
    Rational cont(mpq_class(::abs(g), l));
    if (terms_.rbegin()->second.sign() < 0) cont = -cont;
    return cont;
}

Exponents Polynomial::monomial_gcd() const {
    Exponents g(nvars_, 0);
    if (terms_.empty()) return g;
    g = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < nvars_; ++i) g[i] = std::min(g[i], e[i]);
    return g;
}

Polynomial Polynomial::divide_monomial(const Exponents& m) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        Exponents q = e;
        for (std::size_t i = 0; i < m.size() && i < q.size(); ++i) {
            if (q[i] < m[i]) throw InputError("monomial does not divide polynomial");
            q[i] -= m[i];
        }
        out.terms_.emplace(std::move(q), c);
    }
    return out;
}

std::string Polynomial::str(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        bool is_const = degree_of(e) == 0;
        Rational mag = c.abs();
        if (first) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        first = false;
        bool need_star = false;
        if (is_const || !mag.is_one()) {
            out += mag.str();
            need_star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (need_star) out += "*";
            out += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
            if (e[i] > 1) out += "^" + std::to_string(e[i]);
            need_star = true;
        }
    }
    return out;
}

}  // namespace nij
