#include "nij/expression.hpp"

#include <cctype>

#include "nij/error.hpp"

namespace nij {

namespace {

class Parser {
public:
    Parser(std::string_view text, std::span<const std::string> coords) : text_(text), coords_(coords) {}

    ScalarField parse() {
        ScalarField v = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("cannot parse '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " +
                         what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    // Accepts ASCII '-' and the UTF-8 minus sign U+2212.
    bool eat_minus() {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '-') {
            ++pos_;
            return true;
        }
        if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
            pos_ += 3;
            return true;
        }
        return false;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ScalarField expr() {
        bool neg = false;
        if (eat_minus()) neg = true;
        else eat('+');
        ScalarField acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (eat('+')) acc += term();
            else if (eat_minus()) acc -= term();
            else return acc;
        }
    }

    ScalarField term() {
        ScalarField acc = power();
        for (;;) {
            if (eat('*')) {
                acc *= power();
            } else if (eat('/')) {
                std::size_t at = pos_;
                ScalarField d = power();
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    ScalarField power() {
        ScalarField base = primary();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("exponent must be a nonnegative integer literal");
            unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
            if (e > 64) fail("exponent too large");
            base = base.pow(static_cast<unsigned>(e));
        }
        check_no_juxtaposition();
        return base;
    }

    void check_no_juxtaposition() {
        std::size_t save = pos_;
        skip_ws();
        if (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(')
                fail("implicit multiplication is not allowed");
        }
        pos_ = save;
    }

    ScalarField primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ScalarField v = expr();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                fail("implicit multiplication is not allowed");
            return ScalarField(Polynomial(Rational::parse(text_.substr(start, pos_ - start)), coords_.size()));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string_view name = text_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < coords_.size(); ++i)
                if (coords_[i] == name) return ScalarField::variable(i, coords_.size());
            pos_ = start;
            fail("unknown coordinate '" + std::string(name) + "'");
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::span<const std::string> coords_;
    std::size_t pos_ = 0;
};

}  // namespace

ScalarField parse_scalar(std::string_view text, std::span<const std::string> coords) {
    return Parser(text, coords).parse();
}

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> coords) {
    ScalarField f = parse_scalar(text, coords);
    if (!f.is_polynomial()) throw InputError("'" + std::string(text) + "' is not a polynomial");
    return f.num();
}

}  // namespace nij
