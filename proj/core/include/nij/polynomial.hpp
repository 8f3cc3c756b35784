#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nij/rational.hpp"

namespace nij {

using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order on exponent vectors of equal length: total
/// degree first, then lexicographic with the first variable most significant.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial with rational coefficients.
///
/// The polynomial carries the number of variables of its chart. Binary
/// operations accept operands with fewer variables (typically constants) and
/// pad their exponent vectors with zeros.
class Polynomial {
public:
    using TermMap = std::map<Exponents, Rational, GrlexLess>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
    Polynomial(const Rational& c, std::size_t nvars = 0);  // NOLINT(google-explicit-constructor)
    Polynomial(int c) : Polynomial(Rational(c)) {}          // NOLINT(google-explicit-constructor)

    /// The coordinate function x^{index}, 0-based.
    static Polynomial variable(std::size_t index, std::size_t nvars);
    static Polynomial monomial(const Rational& coeff, Exponents exps);

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Coefficient of the constant monomial.
    Rational constant_term() const;
    int total_degree() const;  // -1 for the zero polynomial
    /// Largest term in grlex order. Undefined on zero.
    const std::pair<const Exponents, Rational>& leading_term() const { return *terms_.rbegin(); }

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend bool operator==(const Polynomial& a, const Polynomial& b);

    Polynomial pow(unsigned e) const;
    Polynomial derivative(std::size_t index) const;
    Rational evaluate(std::span<const Rational> point) const;

    /// Exact quotient when `d` divides this polynomial, otherwise nullopt.
    std::optional<Polynomial> divide_exact(const Polynomial& d) const;

    /// Content c such that this / c has coprime integer coefficients and a
    /// positive leading coefficient. Zero for the zero polynomial.
    Rational content() const;
    /// Componentwise minimum exponent over all terms.
    Exponents monomial_gcd() const;
    /// Divides by the monomial x^e, which must divide every term.
    Polynomial divide_monomial(const Exponents& e) const;

    /// Pads exponent vectors with zeros up to `nvars` variables.
    Polynomial promoted(std::size_t nvars) const;

    /// Canonical text, terms in decreasing grlex order. Missing names fall
    /// back to x1, x2, ...
    std::string str(std::span<const std::string> names = {}) const;

private:
    void add_term(const Exponents& e, const Rational& c);
    void align(std::size_t nvars);

    std::size_t nvars_ = 0;
    TermMap terms_;
};

}  // namespace nij
