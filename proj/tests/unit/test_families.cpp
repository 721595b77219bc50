#include "corpus.hpp"

#include "quiverstab/errors.hpp"
#include "quiverstab/families.hpp"
#include "quiverstab/sweep.hpp"

#include <doctest.h>

#include <random>

using namespace quiverstab;
using namespace quiverstab::testing;

namespace {

std::vector<Rational> q(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

const FamilyOverP1& family_of(const Description& doc) {
    REQUIRE(doc.families.size() == 1);
    return doc.families.front();
}

StabilityParams params_for(const Description& doc, const FamilyOverP1& fam) {
    REQUIRE_FALSE(doc.params.empty());
    const auto& spec = doc.params.front();
    const auto n = fam.rank_vector().size();
    return StabilityParams::create(spec.theta, spec.lambda.value_or(std::vector<Rational>(n, 1)),
                                   spec.xi.value_or(0), fam.rank_vector());
}

Representation k2_rep(const PresentationPtr& pres, std::uint32_t a, std::uint32_t b) {
    return make_representation(pres, 3, DimensionVector({1, 1}), {FpMatrix(1, 1, {a}), FpMatrix(1, 1, {b})});
}

const char* const kFamilyFiles[] = {"k2_taut.qv",  "k2_const.qv",          "k2_square.qv",
                                    "k2_twisted.qv", "a3_family.qv",       "loop_family.qv",
                                    "kronecker3_family.qv", "k2_conic_f3.qv"};

} // namespace

TEST_SUITE("families") {

TEST_CASE("polynomials") {
    const PrimeField f(5);
    const std::vector<long long> c{1, 0, 3};
    const auto p = BivariatePoly::from_coefficients(f, c);
    CHECK(to_string(p) == "s^2 + 3*t^2");
    CHECK(p.evaluate(f, 2, 1) == (4 + 3) % 5);
    CHECK(to_string(parse_polynomial("2*s*t - t^2", f)) == "2*s*t + 4*t^2");
    CHECK(parse_polynomial("s + t", f) == poly_add(f, parse_polynomial("s", f), parse_polynomial("t", f)));
    CHECK(poly_mul(f, parse_polynomial("s + t", f), parse_polynomial("s - t", f)) ==
          parse_polynomial("s^2 - t^2", f));
    CHECK(poly_scale(f, parse_polynomial("s", f), 0).is_zero());
    CHECK(to_string(BivariatePoly{}) == "0");
}

TEST_CASE("family validation") {
    const auto taut = load("k2_taut.qv");
    CHECK(family_of(taut).rank_vector() == DimensionVector({1, 1}));
    CHECK_NOTHROW(check_family(family_of(taut), params_for(taut, family_of(taut))));
    CHECK(check_family(family_of(taut), params_for(taut, family_of(taut))).size() == 4);
    const auto cst = load("k2_const.qv");
    CHECK_NOTHROW(check_family(family_of(cst), params_for(cst, family_of(cst))));

    const auto k2 = presentation_of("k2.qv");
    const PrimeField f(3);
    try {
        FamilyOverP1::create("bad", k2, f, {{0}, {1}}, {{parse_polynomial("s + 1", f)}, {BivariatePoly{}}});
        FAIL("inhomogeneous entry accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == "families.degree");
    }
    CHECK_THROWS_AS(FamilyOverP1::create("bad", k2, f, {{0}, {1}}, {{parse_polynomial("s^2", f)}, {BivariatePoly{}}}),
                    Error);
    CHECK_THROWS_AS(FamilyOverP1::create("bad", k2, f, {{0}, {1, 1}}, {{parse_polynomial("s", f)}, {BivariatePoly{}}}),
                    Error);

    const auto loop = presentation_of("loop_x2.qv");
    try {
        FamilyOverP1::create("bad", loop, PrimeField(2), {{0, 0}}, {{BivariatePoly{}, parse_polynomial("1", PrimeField(2)),
                                                                      parse_polynomial("1", PrimeField(2)), BivariatePoly{}}});
        FAIL("x^2 = I accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == "families.relation");
    }

    const auto unstable = FamilyOverP1::create("u", k2, f, {{0}, {0}}, {{BivariatePoly{}}, {BivariatePoly{}}});
    try {
        check_family(unstable, StabilityParams::king(q({-1, 1}), DimensionVector({1, 1})));
        FAIL("unstable fiber accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == "families.unstable_fiber");
    }
}

TEST_CASE("fibers") {
    const auto taut = load("k2_taut.qv");
    const auto& fam = family_of(taut);
    const auto k2 = fam.presentation_ptr();
    CHECK(fiber_at(fam, {1, 0}).key() == k2_rep(k2, 1, 0).key());
    CHECK(fiber_at(fam, {1, 1}).key() == k2_rep(k2, 1, 1).key());
    CHECK(fiber_at(fam, {0, 1}).key() == k2_rep(k2, 0, 1).key());
    CHECK_THROWS(fiber_at(fam, {0, 0}));

    const auto cst = load("k2_const.qv");
    for (const auto& pt : points_of_p1(family_of(cst).field())) {
        CHECK(fiber_at(family_of(cst), pt).key() == fiber_at(family_of(cst), {1, 0}).key());
    }
    const auto pts = points_of_p1(PrimeField(3));
    REQUIRE(pts.size() == 4);
    CHECK(pts.front().to_string() == "[1:0]");
    CHECK(pts.back().to_string() == "[0:1]");
}

TEST_CASE("determinant degrees") {
    CHECK(det_degrees(family_of(load("k2_taut.qv"))) == std::vector<long long>{0, 1});
    CHECK(det_degrees(family_of(load("k2_const.qv"))) == std::vector<long long>{0, 0});
    CHECK(det_degrees(family_of(load("loop_family.qv"))) == std::vector<long long>{1});
    const auto k2 = presentation_of("k2.qv");
    const auto mixed = FamilyOverP1::create("m", k2, PrimeField(2), {{0}, {1, -1}},
                                            {{parse_polynomial("s", PrimeField(2)), BivariatePoly{}},
                                             {BivariatePoly{}, BivariatePoly{}}});
    CHECK(det_degrees(mixed)[1] == 0);
    CHECK(knum_class(family_of(load("k2_taut.qv"))) == std::vector<long long>{1, 2});
}

TEST_CASE("ell dot C by both routes") {
    const auto taut = load("k2_taut.qv");
    const auto params = params_for(taut, family_of(taut));
    const auto det = ell_dot_C_determinant(family_of(taut), params);
    CHECK(det.c == Rational(1, 2));
    CHECK(det.value == Rational(1, 2));
    CHECK(ell_dot_C_charge(family_of(taut), params).value == Rational(1, 2));

    const auto cst = load("k2_const.qv");
    CHECK(ell_dot_C_determinant(family_of(cst), params).value == 0);
    CHECK(ell_dot_C_charge(family_of(cst), params).value == 0);

    CHECK_THROWS_AS(ell_dot_C_determinant(family_of(taut), StabilityParams::king(q({-2, 1}), DimensionVector({1, 2}))),
                    Error);
}

TEST_CASE("routes agree and ℓ·C is invariant under twisting") {
    std::mt19937_64 rng(77);
    for (const char* file : kFamilyFiles) {
        const auto doc = load(file);
        const auto& fam = family_of(doc);
        for (int draw = 0; draw < 50; ++draw) {
            const auto params = random_params(fam.rank_vector(), rng);
            const auto det = ell_dot_C_determinant(fam, params);
            CHECK(det.value == ell_dot_C_charge(fam, params).value);
            CHECK(det.c == nef_constant(params));
            for (int c : {-2, 3}) CHECK(ell_dot_C_charge(twisted(fam, c), params).value == det.value);
        }
    }
}

TEST_CASE("normalization λ(v)(ξ² + 1) = 1") {
    const auto taut = load("k2_taut.qv");
    const auto& fam = family_of(taut);
    for (const Rational& xi : {Rational(0), Rational(1), Rational(-1, 2), Rational(3)}) {
        const Rational lv = 1 / (xi * xi + 1);
        const auto params = StabilityParams::create(q({-1, 1}), {lv / 3, 2 * lv / 3}, xi, DimensionVector({1, 1}));
        CHECK(nef_constant(params) == 1);
        const auto det = ell_dot_C_determinant(fam, params);
        CHECK(det.value == 1);
        CHECK(ell_dot_C_charge(fam, params).value == 1);
    }
}

TEST_CASE("positivity reports") {
    const auto taut = load("k2_taut.qv");
    const auto report = positivity_report(family_of(taut), params_for(taut, family_of(taut)));
    CHECK(report.routes_agree);
    CHECK(report.nonnegative);
    CHECK(report.pairwise_non_equivalent);
    CHECK_FALSE(report.all_s_equivalent);
    CHECK(report.verdict == DichotomyVerdict::confirmed_positive);
    CHECK(report.points.size() == 4);

    const auto cst = load("k2_const.qv");
    const auto flat = positivity_report(family_of(cst), params_for(cst, family_of(cst)));
    CHECK(flat.determinant.value == 0);
    CHECK(flat.all_s_equivalent);
    CHECK(flat.verdict == DichotomyVerdict::confirmed_zero);

    for (const char* file : kFamilyFiles) {
        const auto doc = load(file);
        const auto& fam = family_of(doc);
        const auto v = fam.rank_vector();
        const auto zero = StabilityParams::king(std::vector<Rational>(v.size(), 0), v);
        const auto r = positivity_report(fam, zero);
        CHECK(r.determinant.value == 0);
        CHECK(r.all_s_equivalent);
        CHECK(r.verdict == DichotomyVerdict::confirmed_zero);
    }
}

TEST_CASE("positivity reports do not depend on the worker count") {
    const auto doc = load("kronecker3_family.qv");
    const auto params = params_for(doc, family_of(doc));
    const auto one = positivity_report(family_of(doc), params, {}, 1);
    const auto three = positivity_report(family_of(doc), params, {}, 3);
    CHECK(one.equivalent == three.equivalent);
    CHECK(one.verdict == three.verdict);
}

} // TEST_SUITE
