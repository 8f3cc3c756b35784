#include "nij/scalar_field.hpp"

#include "nij/error.hpp"

namespace nij {

ScalarField::ScalarField(Polynomial num) : num_(std::move(num)), den_(Rational(1), num_.nvars()) {}

ScalarField::ScalarField(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw PoleError("rational function with zero denominator");
    normalize();
}

void ScalarField::normalize() {
    std::size_t n = std::max(num_.nvars(), den_.nvars());
    if (num_.nvars() < n) num_ = num_.promoted(n);
    if (den_.nvars() < n) den_ = den_.promoted(n);
    if (num_.is_zero()) {
        den_ = Polynomial(Rational(1), n);
        return;
    }
    if (den_.is_constant()) {
        Rational c = den_.constant_term();
        if (!c.is_one()) num_ *= c.inverse();
        den_ = Polynomial(Rational(1), n);
        return;
    }
    // Common monomial factor.
    Exponents gn = num_.monomial_gcd(), gd = den_.monomial_gcd();
    Exponents g(n, 0);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = std::min(gn[i], gd[i]);
        any = any || g[i] != 0;
    }
    if (any) {
        num_ = num_.divide_monomial(g);
        den_ = den_.divide_monomial(g);
    }
    // Integer content of the denominator moves into the numerator.
    Rational c = den_.content();
    if (!c.is_one()) {
        Rational inv = c.inverse();
        den_ *= inv;
        num_ *= inv;
    }
    if (den_.is_constant()) return;
    if (auto q = num_.divide_exact(den_)) {
        num_ = std::move(*q);
        den_ = Polynomial(Rational(1), n);
        return;
    }
    if (!num_.is_constant()) {
        if (auto q = den_.divide_exact(num_)) {
            // num/den = 1/q, re-normalize the content of q.
            Rational qc = q->content();
            num_ = Polynomial(qc.inverse(), n);
            den_ = *q * qc.inverse();
        }
    }
}

bool ScalarField::is_constant() const { return num_.is_constant() && den_.is_constant(); }

Rational ScalarField::constant_value() const {
    if (!is_constant()) throw InputError("scalar field is not constant");
    return num_.constant_term() / den_.constant_term();
}

ScalarField ScalarField::operator-() const {
    ScalarField r = *this;
    r.num_ = -r.num_;
    return r;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) { return *this += -o; }

ScalarField& ScalarField::operator*=(const ScalarField& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = ScalarField(Polynomial(std::max(num_.nvars(), o.num_.nvars())));
    num_ = num_ * o.num_;
    if (!o.den_.is_constant() || !o.den_.constant_term().is_one()) den_ = den_ * o.den_;
    normalize();
    return *this;
}

ScalarField ScalarField::inverse() const {
    if (is_zero()) throw PoleError("division by the zero scalar field");
    return ScalarField(den_, num_);
}

ScalarField& ScalarField::operator/=(const ScalarField& o) {
    if (o.is_zero()) throw PoleError("division by the zero scalar field");
    return *this *= o.inverse();
}

bool operator==(const ScalarField& a, const ScalarField& b) {
    return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
}

ScalarField ScalarField::pow(unsigned e) const {
    ScalarField r = *this;
    r.num_ = num_.pow(e);
    r.den_ = den_.pow(e);
    r.normalize();
    return r;
}

ScalarField ScalarField::derivative(std::size_t index) const {
    if (den_.is_constant()) return ScalarField(num_.derivative(index));
    Polynomial n = num_.derivative(index) * den_ - num_ * den_.derivative(index);
    return ScalarField(std::move(n), den_ * den_);
}

Rational ScalarField::evaluate(std::span<const Rational> point) const {
    Rational d = den_.evaluate(point);
    if (d.is_zero()) throw PoleError("pole at sample: denominator " + den_.str() + " vanishes");
    return num_.evaluate(point) / d;
}

std::string ScalarField::str(std::span<const std::string> names) const {
    if (den_.is_constant()) return num_.str(names);
    std::string n = num_.str(names), d = den_.str(names);
    if (num_.size() > 1) n = "(" + n + ")";
    return n + "/(" + d + ")";
}

}  // namespace nij
