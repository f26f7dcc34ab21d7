#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lipeq/errors.hpp"
#include "lipeq/expr.hpp"
#include "lipeq/ifs.hpp"

#include <string>
#include <variant>
#include <vector>

using namespace lipeq;

namespace {

HomogeneousIFS line_ifs(const std::string& lambda, const std::vector<std::string>& maps) {
    std::vector<std::vector<LambdaPoly>> translations;
    for (const std::string& m : maps) translations.push_back({parse_expr(m)});
    return HomogeneousIFS(parse_rational(lambda), 1, std::move(translations));
}

// The five-map lambda = 1/6 pair: overlaps at the two leftmost adjacent pairs
// for the first system, at pairs (1,2) and (3,4) for the second.
HomogeneousIFS sys_a() { return line_ifs("1/6", {"0", "l*(1-l)", "2*l*(1-l)", "3*l", "1-l"}); }
HomogeneousIFS sys_b() { return line_ifs("1/6", {"0", "l*(1-l)", "2*l", "3*l - l^2", "1-l"}); }

ClassCertificate cert_of(const HomogeneousIFS& ifs) {
    auto result = validate_class(ifs);
    REQUIRE(std::holds_alternative<ClassCertificate>(result));
    return std::get<ClassCertificate>(result);
}

ClassViolation violation_of(const HomogeneousIFS& ifs) {
    auto result = validate_class(ifs);
    REQUIRE(std::holds_alternative<ClassViolation>(result));
    return std::get<ClassViolation>(result);
}

// Recomputes every adjacent intersection directly from the evaluated
// translations and checks the certificate against it: claimed overlaps have
// interval length exactly lambda^k, everything else is strictly disjoint.
void check_cert_against_intervals(const HomogeneousIFS& ifs, const ClassCertificate& cert) {
    const Rational lambda = ifs.lambda();
    std::vector<int> overlap_index(ifs.map_count() - 1, 0);
    for (const Overlap& o : cert.overlaps) overlap_index[o.index] = o.exponent;
    for (int i = 0; i + 1 < ifs.map_count(); ++i) {
        Rational length = ifs.translation(i)[0] + lambda - ifs.translation(i + 1)[0];
        CAPTURE(i);
        if (overlap_index[i] > 0) {
            CHECK(length == rat_pow(lambda, overlap_index[i]));
        } else {
            CHECK(length < 0);
        }
    }
}

// The complete-overlap identity, as exact cylinder boxes: for every overlap
// (i, k), f_i f_m^(k-1) and f_(i+1) f_1^(k-1) agree on the unit box.
void check_overlap_identities(const HomogeneousIFS& ifs, const ClassCertificate& cert) {
    int last = ifs.map_count() - 1;
    for (const Overlap& o : cert.overlaps) {
        MapWord left{o.index};
        MapWord right{o.index + 1};
        for (int t = 0; t < o.exponent - 1; ++t) {
            left.push_back(last);
            right.push_back(0);
        }
        CAPTURE(o.index);
        CHECK(ifs.cylinder(left) == ifs.cylinder(right));
        CHECK(ifs.word_map(left) == ifs.word_map(right));
    }
}

}  // namespace

TEST_CASE("constructor rejects out-of-range parameters") {
    CHECK_THROWS_AS(line_ifs("0", {"0", "l", "1-l"}), std::invalid_argument);
    CHECK_THROWS_AS(line_ifs("1", {"0", "l", "1-l"}), std::invalid_argument);
    CHECK_THROWS_AS(line_ifs("3/2", {"0", "l", "1-l"}), std::invalid_argument);
    CHECK_THROWS_AS(
        HomogeneousIFS(Rational(1, 2), 3, {{parse_expr("0")}, {parse_expr("1-l")}}),
        std::invalid_argument);
    // Translation arity must match dim.
    CHECK_THROWS_AS(HomogeneousIFS(Rational(1, 2), 2, {{parse_expr("0")}, {parse_expr("1-l")}}),
                    DimensionMismatch);
}

TEST_CASE("cylinders compose left to right") {
    HomogeneousIFS a = sys_a();
    CHECK(a.translation(1) == Vec{Rational(5, 36)});
    CHECK(a.translation(4) == Vec{Rational(5, 6)});

    CHECK(a.cylinder({}) == Box::unit(1));
    CHECK(a.cylinder({1}) == Box{{Rational(5, 36)}, {Rational(11, 36)}});
    // f_2 after f_1: scale 1/36, image [5/36, 6/36].
    CHECK(a.cylinder({1, 0}) == Box{{Rational(5, 36)}, {Rational(1, 6)}});
    CHECK(a.word_map({1, 0}).scale == Rational(1, 36));
    // Reversed order lands elsewhere: f_1 after f_2 = [5/216, 11/216].
    CHECK(a.cylinder({0, 1}) == Box{{Rational(5, 216)}, {Rational(11, 216)}});

    CHECK_THROWS_AS(a.cylinder({5}), IndexOutOfRange);
    CHECK_THROWS_AS(a.translation(-1), IndexOutOfRange);
}

TEST_CASE("five-map pair at lambda 1/6: certificates") {
    ClassCertificate ca = cert_of(sys_a());
    CHECK(ca.k_vector == std::vector<int>{2});
    CHECK(ca.gamma == std::vector<std::vector<int>>{{0, 1}});
    CHECK(ca.gamma_rest == std::vector<int>{2, 3});
    CHECK(ca.gamma_counts() == std::vector<int>{2});
    CHECK(ca.side == FreeSide::RightFree);
    CHECK(ca.overlaps == std::vector<Overlap>{{0, 2}, {1, 2}});
    check_cert_against_intervals(sys_a(), ca);
    check_overlap_identities(sys_a(), ca);

    ClassCertificate cb = cert_of(sys_b());
    CHECK(cb.k_vector == std::vector<int>{2});
    CHECK(cb.gamma == std::vector<std::vector<int>>{{0, 2}});
    CHECK(cb.gamma_rest == std::vector<int>{1, 3});
    CHECK(cb.gamma_counts() == std::vector<int>{2});
    check_cert_against_intervals(sys_b(), cb);
    check_overlap_identities(sys_b(), cb);

    CHECK(gamma_signature(ca) == gamma_signature(cb));
}

TEST_CASE("six maps at lambda 1/8: interior overlaps leave both ends free") {
    HomogeneousIFS f = line_ifs("1/8", {"0", "2*l", "3*l - l^2", "4*l - 2*l^2", "5*l", "1-l"});
    ClassCertificate cert = cert_of(f);
    CHECK(cert.k_vector == std::vector<int>{2});
    CHECK(cert.gamma == std::vector<std::vector<int>>{{1, 2}});
    CHECK(cert.gamma_rest == std::vector<int>{0, 3, 4});
    CHECK(cert.side == FreeSide::BothFree);
    check_cert_against_intervals(f, cert);
    check_overlap_identities(f, cert);
}

TEST_CASE("deeper overlap exponents") {
    HomogeneousIFS k3 = line_ifs("1/6", {"0", "l - l^3", "1-l"});
    ClassCertificate c3 = cert_of(k3);
    CHECK(c3.k_vector == std::vector<int>{2 + 1});
    CHECK(c3.overlaps == std::vector<Overlap>{{0, 3}});
    check_overlap_identities(k3, c3);

    HomogeneousIFS k4 = line_ifs("1/6", {"0", "l - l^4", "1-l"});
    ClassCertificate c4 = cert_of(k4);
    CHECK(c4.overlaps == std::vector<Overlap>{{0, 4}});
    check_overlap_identities(k4, c4);

    // Two levels at once: k-vector is sorted descending.
    HomogeneousIFS mixed =
        line_ifs("1/6", {"0", "l - l^3", "2*l - 2*l^3", "3*l - 2*l^3 - l^2", "1-l"});
    ClassCertificate cm = cert_of(mixed);
    CHECK(cm.k_vector == std::vector<int>{3, 2});
    CHECK(cm.gamma == std::vector<std::vector<int>>{{0, 1}, {2}});
    CHECK(cm.gamma_rest == std::vector<int>{3});
    check_cert_against_intervals(mixed, cm);
    check_overlap_identities(mixed, cm);
}

TEST_CASE("no overlaps at all is fine: empty certificate") {
    HomogeneousIFS plain = line_ifs("1/5", {"0", "1/2*(1-l)", "1-l"});
    ClassCertificate cert = cert_of(plain);
    CHECK(cert.k_vector.empty());
    CHECK(cert.overlaps.empty());
    CHECK(cert.gamma.empty());
    CHECK(cert.gamma_rest == std::vector<int>{0, 1});
    CHECK(cert.side == FreeSide::BothFree);
    CHECK(cert.gamma_counts().empty());
}

TEST_CASE("class violations name the condition and the maps") {
    SUBCASE("fewer than three maps") {
        CHECK(violation_of(line_ifs("1/2", {"0", "1-l"})).condition == "m");
    }
    SUBCASE("first translation nonzero") {
        CHECK(violation_of(line_ifs("1/6", {"l^2", "3*l", "1-l"})).condition == "I");
    }
    SUBCASE("last translation short of 1 - lambda") {
        CHECK(violation_of(line_ifs("1/6", {"0", "2*l", "4*l"})).condition == "I");
    }
    SUBCASE("not strictly increasing") {
        ClassViolation v =
            violation_of(line_ifs("1/2", {"0", "l*(1-l)", "2*l*(1-l)", "3*l", "1-l"}));
        CHECK(v.condition == "I");
    }
    SUBCASE("overlap length is no power of lambda") {
        ClassViolation v = violation_of(line_ifs("1/6", {"0", "1/2*l", "1-l"}));
        CHECK(v.condition == "II");
        CHECK(v.indices == std::vector<int>{0, 1});
    }
    SUBCASE("exponent one means the maps nearly coincide") {
        // a_2 = lambda would give overlap length lambda^1; k >= 2 is required.
        CHECK(violation_of(line_ifs("1/3", {"0", "l - l^1", "1-l"})).condition == "I");
        HomogeneousIFS shifted = line_ifs("2/5", {"0", "1/5", "1-l"});
        // overlap length 2/5 - 1/5 = 1/5, and (2/5)^k never hits 1/5
        CHECK(violation_of(shifted).condition == "II");
    }
    SUBCASE("three maps through one point") {
        ClassViolation v = violation_of(line_ifs("1/6", {"0", "1/3*l", "2/3*l", "1-l"}));
        CHECK(v.condition == "II");
        CHECK(v.indices == std::vector<int>{0, 1, 2});
        REQUIRE(v.witness.has_value());
        CHECK(*v.witness == Box{{Rational(1, 9)}, {Rational(1, 6)}});
    }
    SUBCASE("touching in a point is neither disjoint nor a real overlap") {
        ClassViolation v = violation_of(line_ifs("1/3", {"0", "l", "1-l"}));
        CHECK(v.condition == "II");
    }
    SUBCASE("overlaps at both end pairs") {
        HomogeneousIFS both = line_ifs("1/6", {"0", "l - l^2", "1 - 2*l + l^2", "1-l"});
        ClassViolation v = violation_of(both);
        CHECK(v.condition == "III");
    }
}

TEST_CASE("reflection mirrors the overlap pattern and is an involution") {
    HomogeneousIFS a = sys_a();
    HomogeneousIFS r = reflect(a);

    // c_i = (1 - lambda) - a_(m+1-i), so the gaps move to the left end.
    CHECK(r.translation(0) == Vec{Rational(0)});
    CHECK(r.translation(4) == Vec{Rational(5, 6)});
    ClassCertificate rc = cert_of(r);
    CHECK(rc.k_vector == std::vector<int>{2});
    CHECK(rc.gamma == std::vector<std::vector<int>>{{2, 3}});
    CHECK(rc.side == FreeSide::LeftFree);
    CHECK(rc.gamma_counts() == cert_of(a).gamma_counts());
    check_overlap_identities(r, rc);

    HomogeneousIFS rr = reflect(r);
    for (int i = 0; i < a.map_count(); ++i) {
        CHECK(rr.translation_poly(i) == a.translation_poly(i));
    }

    HomogeneousIFS square(Rational(1, 4), 2,
                          {{parse_expr("0"), parse_expr("0")},
                           {parse_expr("1-l"), parse_expr("1-l")}});
    CHECK_THROWS_AS(reflect(square), std::invalid_argument);
}

TEST_CASE("normalization always ends right-free") {
    HomogeneousIFS a = sys_a();
    ClassCertificate ca = cert_of(a);
    HomogeneousIFS na = normalize_right_free(a, ca);
    for (int i = 0; i < a.map_count(); ++i) {
        CHECK(na.translation(i) == a.translation(i));  // already right-free
    }

    HomogeneousIFS r = reflect(a);
    ClassCertificate cr = cert_of(r);
    HomogeneousIFS nr = normalize_right_free(r, cr);
    ClassCertificate cnr = cert_of(nr);
    CHECK(cnr.side == FreeSide::RightFree);
    CHECK(cnr.gamma == ca.gamma);
}

TEST_CASE("validate_or_throw wraps violations") {
    CHECK_NOTHROW(validate_or_throw(sys_a()));
    try {
        validate_or_throw(line_ifs("1/6", {"0", "1/2*l", "1-l"}));
        FAIL("expected ClassViolationError");
    } catch (const ClassViolationError& err) {
        CHECK(err.violation().condition == "II");
        CHECK(std::string(err.what()).find("class condition (II)") != std::string::npos);
    }
}
