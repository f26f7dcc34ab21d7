#include "lipeq/expr.hpp"

#include "lipeq/errors.hpp"

#include <cctype>

namespace lipeq {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    LambdaPoly parse() {
        LambdaPoly p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

    Rational parse_rational_only() {
        skip_ws();
        Rational q = rational();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return q;
    }

private:
    LambdaPoly expr() {
        LambdaPoly acc = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                acc += term();
            } else if (peek() == '-') {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    LambdaPoly term() {
        LambdaPoly acc = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc *= factor();
            } else {
                return acc;
            }
        }
    }

    LambdaPoly factor() {
        LambdaPoly base = atom();
        skip_ws();
        if (peek() == '^') {
            std::size_t caret = pos_;
            ++pos_;
            skip_ws();
            if (!is_digit(peek())) fail("expected exponent after '^'", caret + 1);
            BigInt exp = uint_literal();
            if (exp > 64) fail("exponent exceeds 64", caret + 1);
            return base.pow(exp.convert_to<unsigned>());
        }
        return base;
    }

    LambdaPoly atom() {
        skip_ws();
        char c = peek();
        if (c == 'l') {
            ++pos_;
            return LambdaPoly::lambda();
        }
        if (c == '(') {
            ++pos_;
            LambdaPoly inner = expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (c == '-' || is_digit(c)) return LambdaPoly(rational());
        fail("expected 'l', a rational literal, or '('");
    }

    Rational rational() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        if (!is_digit(peek())) fail("expected digit");
        BigInt num = uint_literal();
        if (neg) num = -num;
        if (peek() == '/') {
            std::size_t slash = pos_;
            ++pos_;
            if (!is_digit(peek())) fail("expected digit after '/'", slash + 1);
            BigInt den = uint_literal();
            if (den == 0) fail("division by zero", slash + 1);
            return Rational(num, den);
        }
        return Rational(num);
    }

    BigInt uint_literal() {
        BigInt value = 0;
        while (is_digit(peek())) {
            value = value * 10 + (peek() - '0');
            ++pos_;
        }
        return value;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(message, pos_); }
    [[noreturn]] void fail(const std::string& message, std::size_t at) const {
        throw SyntaxError(message, at);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

LambdaPoly parse_expr(std::string_view text) { return Parser(text).parse(); }

Rational parse_rational(std::string_view text) { return Parser(text).parse_rational_only(); }

}  // namespace lipeq
