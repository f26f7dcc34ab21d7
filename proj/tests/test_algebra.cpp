#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lipeq/errors.hpp"
#include "lipeq/expr.hpp"
#include "lipeq/geometry.hpp"
#include "lipeq/poly.hpp"
#include "lipeq/rational.hpp"

#include <random>
#include <string>
#include <vector>

using namespace lipeq;

namespace {

Rational rat(long long n, long long d = 1) { return Rational(n, d); }

Rational eval_at(const std::string& text, const Rational& lambda) {
    return parse_expr(text).eval(lambda);
}

}  // namespace

TEST_CASE("expression grammar evaluates hand-checked fixtures") {
    struct Row {
        const char* text;
        Rational lambda;
        Rational value;
    };
    const Row rows[] = {
        {"0", rat(1, 6), rat(0)},
        {"l", rat(1, 6), rat(1, 6)},
        {"l*(1-l)", rat(1, 6), rat(5, 36)},
        {"2*l*(1-l)", rat(1, 6), rat(5, 18)},
        {"3*l", rat(1, 6), rat(1, 2)},
        {"1-l", rat(1, 6), rat(5, 6)},
        {"3*l - l^2", rat(1, 6), rat(17, 36)},
        {"1/2*(1-l)", rat(1, 5), rat(2, 5)},
        {"(1-l)^2", rat(1, 4), rat(9, 16)},
        {"(1-l)*(1-2*l)", rat(1, 4), rat(3, 8)},
        {"4*l - 2*l^2", rat(1, 8), rat(15, 32)},
        {"-3/2 + l^3", rat(1, 2), rat(-11, 8)},
        {"l^0", rat(1, 3), rat(1)},
        {"2^3", rat(1, 3), rat(8)},
        {" l * ( 1 - l ) ", rat(1, 6), rat(5, 36)},
        {"l - l^4", rat(1, 2), rat(7, 16)},
    };
    for (const Row& row : rows) {
        CAPTURE(row.text);
        CHECK(eval_at(row.text, row.lambda) == row.value);
    }
}

TEST_CASE("multiplication is commutative across literal and symbol order") {
    CHECK(parse_expr("5*l") == parse_expr("l*5"));
    CHECK(parse_expr("l*l") == parse_expr("l^2"));
    CHECK(parse_expr("(1-l)*(1+l)") == parse_expr("1 - l^2"));
}

TEST_CASE("syntax errors carry byte offsets") {
    struct Bad {
        const char* text;
        std::size_t offset;
    };
    const Bad rows[] = {
        {"l**2", 2},   // second '*' starts an empty factor
        {"l^", 2},     // missing exponent
        {"l^-2", 2},   // exponent must be unsigned
        {"(1-l", 4},   // unbalanced paren
        {"1-l)", 3},   // trailing garbage
        {"x", 0},
        {"", 0},
        {"1+", 2},
    };
    for (const Bad& row : rows) {
        CAPTURE(row.text);
        try {
            parse_expr(row.text);
            FAIL_CHECK("expected SyntaxError for \"" << row.text << "\"");
        } catch (const SyntaxError& err) {
            CHECK(err.position() == row.offset);
        }
    }
    CHECK_THROWS_AS(parse_expr("1/0"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("l^999"), SyntaxError);  // exponent cap
}

TEST_CASE("whole-string rational literals") {
    CHECK(parse_rational("1/6") == rat(1, 6));
    CHECK(parse_rational("-3") == rat(-3));
    CHECK(parse_rational("2/4") == rat(1, 2));  // canonical form
    CHECK(parse_rational(" 0 ") == rat(0));
    CHECK_THROWS_AS(parse_rational("l"), SyntaxError);
    CHECK_THROWS_AS(parse_rational("1/6+0"), SyntaxError);
    CHECK_THROWS_AS(parse_rational("1/0"), SyntaxError);
}

TEST_CASE("polynomial arithmetic agrees with expanded forms") {
    LambdaPoly l = LambdaPoly::lambda();
    LambdaPoly one(Rational(1));

    CHECK((one - l) * (one - l) == parse_expr("1 - 2*l + l^2"));
    CHECK((one - l).pow(3) == parse_expr("1 - 3*l + 3*l^2 - l^3"));
    CHECK(l.pow(0) == one);
    CHECK((l - l).is_zero());
    CHECK((l - l).degree() == -1);
    CHECK(LambdaPoly::monomial(rat(-1), 2) == -l * l);

    // Horner evaluation against direct substitution.
    LambdaPoly p = parse_expr("2 - 3*l + 1/2*l^3");
    Rational x = rat(2, 7);
    CHECK(p.eval(x) == rat(2) - rat(3) * x + rat(1, 2) * x * x * x);
}

TEST_CASE("rendering round-trips through the grammar") {
    const char* texts[] = {
        "0", "1", "-1", "l", "-3/2*l", "1 - l", "3*l - l^2",
        "-1*l^2", "-1*l^3 + 1/2", "2*l^4 - 7/3*l^2 + 1",
    };
    for (const char* text : texts) {
        CAPTURE(text);
        LambdaPoly p = parse_expr(text);
        CHECK(parse_expr(p.to_string()) == p);
    }

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 5);
    std::uniform_int_distribution<int> deg(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Rational> coeffs(deg(rng) + 1);
        for (Rational& c : coeffs) c = rat(num(rng), den(rng));
        LambdaPoly p(coeffs);
        CAPTURE(p.to_string());
        CHECK(parse_expr(p.to_string()) == p);
    }
}

TEST_CASE("rat_pow matches repeated multiplication") {
    CHECK(rat_pow(rat(1, 6), 0) == rat(1));
    CHECK(rat_pow(rat(1, 6), 3) == rat(1, 216));
    CHECK(rat_pow(rat(-2, 3), 3) == rat(-8, 27));
}

TEST_CASE("sqrt brackets pin the root to one scale unit") {
    const Rational unit(BigInt(1), BigInt(1) << 62);
    const Rational qs[] = {rat(2), rat(1, 2), rat(17), rat(5, 7),
                           rat(1, 46656), rat(46656), rat(25, 65536)};
    for (const Rational& q : qs) {
        CAPTURE(to_fraction_string(q));
        Rational lo = sqrt_lower_bound(q);
        Rational hi = sqrt_upper_bound(q);
        CHECK(lo * lo <= q);
        CHECK(q <= hi * hi);
        CHECK(hi - lo == unit);
    }
    // The lower bound is exact when the scaled radicand stays integral
    // (integer squares, power-of-two denominators)...
    CHECK(sqrt_lower_bound(rat(46656)) == rat(216));
    CHECK(sqrt_lower_bound(rat(25, 65536)) == rat(5, 256));
    // ...and sits just below the root otherwise.
    Rational near = sqrt_lower_bound(rat(1, 46656));
    CHECK(near < rat(1, 216));
    CHECK(rat(1, 216) - near < unit);
    CHECK(sqrt_lower_bound(rat(0)) == rat(0));
    CHECK(sqrt_upper_bound(rat(0)) == rat(0));
    CHECK_THROWS(sqrt_lower_bound(rat(-1)));
}

TEST_CASE("decimal rendering: 12 significant digits, half away, trimmed") {
    CHECK(to_decimal_string(rat(0)) == "0");
    CHECK(to_decimal_string(rat(1)) == "1");
    CHECK(to_decimal_string(rat(1, 2)) == "0.5");
    CHECK(to_decimal_string(rat(216)) == "216");
    CHECK(to_decimal_string(rat(1, 6)) == "0.166666666667");
    CHECK(to_decimal_string(rat(-5, 36)) == "-0.138888888889");
    CHECK(to_decimal_string(rat(1, 216)) == "0.00462962962963");
    CHECK(to_decimal_string(rat(1, 3), 4) == "0.3333");
    CHECK(to_decimal_string(rat(2, 3), 4) == "0.6667");
    // Carry across the leading digit.
    CHECK(to_decimal_string(Rational(BigInt(999999999999999), BigInt(1000000000000000))) == "1");
    CHECK(to_decimal_string(rat(9999, 10000), 3) == "1");
    // Wide integers round at the 12th digit and keep magnitude.
    CHECK(to_decimal_string(Rational(BigInt("12345678901234567"))) == "12345678901200000");
    CHECK(to_decimal_string(rat(5), 1) == "5");
    CHECK_THROWS(to_decimal_string(rat(1), 0));
}

TEST_CASE("fraction rendering") {
    CHECK(to_fraction_string(rat(5, 36)) == "5/36");
    CHECK(to_fraction_string(rat(-5, 36)) == "-5/36");
    CHECK(to_fraction_string(rat(7)) == "7");
    CHECK(to_fraction_string(rat(0)) == "0");
}

TEST_CASE("affine composition is exact and associative") {
    // First two maps of the lambda = 1/6 five-map system.
    AffineMap f1{rat(1, 6), {rat(0)}};
    AffineMap f2{rat(1, 6), {rat(5, 36)}};

    AffineMap f21 = compose(f2, f1);
    CHECK(f21.scale == rat(1, 36));
    CHECK(f21.shift == Vec{rat(5, 36)});

    AffineMap f12 = compose(f1, f2);
    CHECK(f12.shift == Vec{rat(5, 216)});

    AffineMap g{rat(1, 3), {rat(2, 5)}};
    CHECK(compose(compose(f1, f2), g) == compose(f1, compose(f2, g)));

    AffineMap two_d{rat(1, 2), {rat(0), rat(0)}};
    CHECK_THROWS_AS(compose(f1, two_d), DimensionMismatch);

    CHECK(compose(AffineMap::identity(1), f2) == f2);
    CHECK(compose(f2, AffineMap::identity(1)) == f2);
}

TEST_CASE("box predicates treat boundaries as closed") {
    Box a{{rat(0)}, {rat(1, 2)}};
    Box b{{rat(1, 2)}, {rat(1)}};
    Box c{{rat(3, 5)}, {rat(1)}};

    CHECK(a.intersects(b));  // touching counts
    CHECK_FALSE(a.intersects(c));
    CHECK(box_gap_squared(a, b) == rat(0));
    CHECK(box_gap_squared(a, c) == rat(1, 100));
    CHECK(Box::unit(1).contains(a));
    CHECK(a.contains(a));
    CHECK_FALSE(a.contains(Box::unit(1)));

    Box p{{rat(0), rat(0)}, {rat(1, 4), rat(1, 4)}};
    Box q{{rat(3, 4), rat(1, 2)}, {rat(1), rat(1)}};
    // Gap along x is 1/2, along y 1/4.
    CHECK(box_gap_squared(p, q) == rat(1, 4) + rat(1, 16));
    CHECK(bounding_box(p, q) == Box::unit(2));

    CHECK(midpoint(a) == Vec{rat(1, 4)});
    CHECK(distance_squared({rat(0), rat(0)}, {rat(3, 5), rat(4, 5)}) == rat(1));

    CHECK(lex_less(a, b));
    CHECK_FALSE(lex_less(b, a));
    CHECK_FALSE(lex_less(a, a));
}
