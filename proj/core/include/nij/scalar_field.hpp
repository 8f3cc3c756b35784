#pragma once

#include <span>
#include <string>

#include "nij/polynomial.hpp"

namespace nij {

/// Rational function num/den on a chart.
///
/// No multivariate GCD is computed. Equality is decided by cross
/// multiplication. After each operation the representation is tidied
/// opportunistically: integer content and common monomial factors are
/// removed, the denominator's leading coefficient is made positive, and the
/// fraction collapses when one side divides the other exactly.
class ScalarField {
public:
    ScalarField() : num_(0), den_(1) {}
    ScalarField(Polynomial num);  // NOLINT(google-explicit-constructor)
    ScalarField(Polynomial num, Polynomial den);
    ScalarField(const Rational& c) : ScalarField(Polynomial(c)) {}  // NOLINT(google-explicit-constructor)
    ScalarField(int c) : ScalarField(Rational(c)) {}                 // NOLINT(google-explicit-constructor)

    static ScalarField variable(std::size_t index, std::size_t nvars) {
        return ScalarField(Polynomial::variable(index, nvars));
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    /// True when the field is a rational constant.
    bool is_constant() const;
    /// Value of a constant field; throws InputError otherwise.
    Rational constant_value() const;
    /// max(deg num, deg den); a cheap size measure used for pivoting.
    int degree() const { return std::max(num_.total_degree(), den_.total_degree()); }

    ScalarField operator-() const;
    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(const ScalarField& o);
    ScalarField& operator/=(const ScalarField& o);
    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
    friend ScalarField operator/(ScalarField a, const ScalarField& b) { return a /= b; }
    friend bool operator==(const ScalarField& a, const ScalarField& b);

    ScalarField pow(unsigned e) const;
    ScalarField inverse() const;
    ScalarField derivative(std::size_t index) const;
    /// Exact value at a point; throws PoleError if the denominator vanishes.
    Rational evaluate(std::span<const Rational> point) const;

    std::string str(std::span<const std::string> names = {}) const;

private:
    void normalize();

    Polynomial num_;
    Polynomial den_;
};

}  // namespace nij
