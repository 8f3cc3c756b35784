#include "doctest.h"
#include "gen.hpp"
#include "nij/error.hpp"
#include "nij/expression.hpp"
#include "nij/scalar_field.hpp"

using nij::Polynomial;
using nij::Rational;
using nij::ScalarField;

namespace {

const std::vector<std::string> kNames{"x1", "x2", "x3"};

ScalarField f(const char* text) { return nij::parse_scalar(text, kNames); }

}  // namespace

TEST_CASE("rational literals normalize") {
    CHECK(Rational::parse("6/4") == Rational(3, 2));
    CHECK(Rational::parse("-0/7").is_zero());
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(-1, 2).denominator() > 0);
    CHECK(Rational::parse("0").str() == "0");
    CHECK_THROWS_AS(Rational::parse("1/0"), nij::PoleError);
    CHECK_THROWS_AS(Rational::parse("abc"), nij::InputError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), nij::PoleError);
}

TEST_CASE("additive and multiplicative inverses") {
    ScalarField x1 = f("x1");
    CHECK((x1 + (-x1)).is_zero());
    CHECK((ScalarField(1) / x1) * x1 == ScalarField(1));
}

TEST_CASE("square of a sum expands by schoolbook oracle") {
    ScalarField lhs = f("(x1+x2)^2");
    // Oracle: (a+b)^2 with the cross term counted twice.
    Polynomial x1 = Polynomial::variable(0, 3), x2 = Polynomial::variable(1, 3);
    Polynomial oracle = x1 * x1 + Polynomial(2, 3) * x1 * x2 + x2 * x2;
    CHECK(lhs == ScalarField(oracle));
    CHECK(lhs.num().size() == 3);
}

TEST_CASE("partial derivatives") {
    CHECK(f("x1*x2").derivative(0) == f("x2"));
    CHECK(f("x1").derivative(1).is_zero());
    CHECK(f("1/x1").derivative(0) == f("-1/x1^2"));
}

TEST_CASE("zero tests") {
    CHECK(f("(x1^2 - x1*x1)/x2").is_zero());
    CHECK_FALSE(f("x1").is_zero());
    CHECK(f("((x1+x2)^2 - x1^2 - 2*x1*x2 - x2^2)/(1+x3^2)").is_zero());
}

TEST_CASE("division by the zero field is an error") {
    CHECK_THROWS_AS(f("x1") / f("x1 - x1"), nij::PoleError);
    CHECK_THROWS_AS(ScalarField(0).inverse(), nij::PoleError);
}

TEST_CASE("evaluation reports poles") {
    std::vector<Rational> origin{0, 0, 0};
    CHECK_THROWS_AS(f("1/x1").evaluate(origin), nij::PoleError);
    std::vector<Rational> p{Rational(3), Rational(5), Rational(1, 2)};
    CHECK(f("x1*x2 + 2*x3").evaluate(p) == Rational(16));
}

TEST_CASE("expression syntax") {
    CHECK(f("3/2*x1^2*x3 - x2") == ScalarField(Polynomial::monomial(Rational(3, 2), {2, 0, 1})) - f("x2"));
    CHECK_THROWS_AS(f("2x1"), nij::InputError);
    CHECK_THROWS_AS(f("y1"), nij::InputError);
    CHECK_THROWS_AS(f("x1^"), nij::InputError);
    CHECK_THROWS_AS(f("(x1"), nij::InputError);
    CHECK(f(" x1 +  x2 ") == f("x2+x1"));
    CHECK_THROWS_AS(nij::parse_polynomial("1/x1", kNames), nij::InputError);
}

TEST_CASE("printing is canonical and reparses") {
    gen::Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        ScalarField a = rng.field(3, 3);
        ScalarField back = f(a.str(kNames).c_str());
        CHECK(back == a);
        CHECK(back.str(kNames) == nij::parse_scalar(back.str(kNames), kNames).str(kNames));
    }
}

TEST_CASE("field axioms on random triples") {
    gen::Rng rng(2024);
    for (int t = 0; t < 500; ++t) {
        ScalarField a = rng.field(3, 3), b = rng.field(3, 3), c = rng.field(3, 3);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a - a).is_zero());
        if (!a.is_zero()) CHECK(a / a == ScalarField(1));
    }
}

TEST_CASE("mixed partials commute") {
    gen::Rng rng(7);
    for (int t = 0; t < 100; ++t) {
        ScalarField a = rng.field(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j) CHECK(a.derivative(i).derivative(j) == a.derivative(j).derivative(i));
    }
}

TEST_CASE("Leibniz rule") {
    gen::Rng rng(8);
    for (int t = 0; t < 100; ++t) {
        ScalarField a = rng.field(3, 3), b = rng.field(3, 3);
        std::size_t i = static_cast<std::size_t>(rng.integer(0, 2));
        CHECK((a * b).derivative(i) == a.derivative(i) * b + a * b.derivative(i));
    }
}

TEST_CASE("quotient rule against the product rule") {
    gen::Rng rng(9);
    for (int t = 0; t < 100; ++t) {
        ScalarField a = rng.field(3, 2);
        ScalarField b = ScalarField(rng.nonzero_polynomial(3, 2));
        std::size_t i = static_cast<std::size_t>(rng.integer(0, 2));
        ScalarField q = a / b;
        CHECK(q.derivative(i) * b == a.derivative(i) - q * b.derivative(i));
    }
}
