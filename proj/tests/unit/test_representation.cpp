#include "corpus.hpp"

#include "quiverstab/errors.hpp"
#include "quiverstab/representation.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace quiverstab;
using namespace quiverstab::testing;

namespace {

std::set<std::vector<int>> dims_of(const std::vector<Submodule>& subs) {
    std::set<std::vector<int>> out;
    for (const auto& s : subs) out.insert(s.dim().entries());
    return out;
}

std::set<std::string> keys_of(const std::vector<Submodule>& subs) {
    std::set<std::string> out;
    for (const auto& s : subs) out.insert(s.key());
    return out;
}

Representation k2_rep(const PresentationPtr& pres, std::uint32_t p, std::uint32_t a, std::uint32_t b) {
    return make_representation(pres, p, DimensionVector({1, 1}), {FpMatrix(1, 1, {a}), FpMatrix(1, 1, {b})});
}

} // namespace

TEST_SUITE("representation") {

TEST_CASE("construction checks shapes and relations") {
    const auto k2 = presentation_of("k2.qv");
    CHECK_NOTHROW(k2_rep(k2, 3, 1, 0));
    CHECK_THROWS_AS(make_representation(k2, 3, DimensionVector({1, 1}), {FpMatrix(1, 1, {1})}), Error);
    CHECK_THROWS_AS(make_representation(k2, 3, DimensionVector({1, 2}), {FpMatrix(1, 1, {1}), FpMatrix(1, 1, {1})}),
                    Error);

    const auto loop = presentation_of("loop_x2.qv");
    CHECK_NOTHROW(make_representation(loop, 2, DimensionVector({2}), {FpMatrix(2, 2, {0, 1, 0, 0})}));
    try {
        make_representation(loop, 2, DimensionVector({2}), {FpMatrix(2, 2, {0, 1, 1, 0})});
        FAIL("x^2 = I should be rejected");
    } catch (const Error& e) {
        CHECK(e.kind() == "representation.relation_violated");
        CHECK(std::string(e.what()).find("x*x") != std::string::npos);
    }
}

TEST_CASE("simples and projectives") {
    const auto k2 = presentation_of("k2.qv");
    const PrimeField f(3);
    CHECK(vertex_simple(k2, f, 0).dim() == DimensionVector({1, 0}));
    CHECK(projective_module(k2, f, 0).dim() == DimensionVector({1, 2}));
    CHECK(projective_module(k2, f, 1).dim() == DimensionVector({0, 1}));
    CHECK_THROWS_AS(projective_module(presentation_of("loop_x2.qv"), PrimeField(2), 0), Error);

    const auto a3 = presentation_of("a3.qv");
    CHECK(projective_module(a3, f, 0).dim() == DimensionVector({1, 1, 1}));
    const auto rel = std::make_shared<const QuiverPresentation>(
        parse_presentation("vertices 1 2 3\narrow f 1 2\narrow g 2 3\nrelation g*f\n"));
    CHECK(projective_module(rel, f, 0).dim() == DimensionVector({1, 1, 0}));
}

TEST_CASE("submodule lattice examples") {
    const auto k2 = presentation_of("k2.qv");
    CHECK(dims_of(all_submodules(k2_rep(k2, 2, 1, 0))) == std::set<std::vector<int>>{{0, 0}, {0, 1}, {1, 1}});
    CHECK(dims_of(all_submodules(k2_rep(k2, 2, 0, 0))) ==
          std::set<std::vector<int>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    for (const auto& named : load("k2.qv").reps) {
        const auto subs = all_submodules(named.rep);
        CHECK(subs.front() == zero_submodule(named.rep));
        CHECK(subs.back() == whole_submodule(named.rep));
    }
}

TEST_CASE("submodule lattice cap") {
    const auto k2 = presentation_of("k2.qv");
    const auto m = make_representation(k2, 2, DimensionVector({3, 0}), {FpMatrix(0, 3), FpMatrix(0, 3)});
    CHECK(all_submodules(m).size() == 16);
    try {
        all_submodules(m, 5);
        FAIL("cap should trigger");
    } catch (const CapExceeded& e) {
        CHECK(e.partial() >= 5);
    }
}

TEST_CASE("submodule lattice agrees with the brute-force oracle") {
    // A smaller version of the acceptance sweep: every rep up to total
    // dimension 4 over F_2 on each bundled quiver.
    for (const char* file : {"k2.qv", "a3.qv", "loop_x2.qv", "kronecker3.qv"}) {
        const auto pres = presentation_of(file);
        for (const auto& d : dimension_vectors(pres->quiver().vertex_count(), 4)) {
            for_each_representation(pres, PrimeField(2), d, 5000, 3, [&](const Representation& m) {
                const auto lattice = all_submodules(m);
                CHECK(keys_of(lattice) == keys_of(brute_force_submodules(m)));
                CHECK(keys_of(lattice).size() == lattice.size());
                for (const auto& s : lattice) CHECK(is_submodule(m, s));
            });
        }
    }
}

TEST_CASE("quotients") {
    const auto k2 = presentation_of("k2.qv");
    const auto m = k2_rep(k2, 3, 1, 0);
    CHECK(are_isomorphic(quotient(m, zero_submodule(m)), m));
    CHECK(quotient(m, whole_submodule(m)).dim().is_zero());
    const auto subs = all_submodules(m);
    const auto it = std::find_if(subs.begin(), subs.end(), [](const Submodule& s) { return s.dim() == DimensionVector({0, 1}); });
    REQUIRE(it != subs.end());
    CHECK(are_isomorphic(quotient(m, *it), vertex_simple(k2, PrimeField(3), 0)));

    Submodule bad = zero_submodule(m);
    bad.spaces[0] = Subspace::full(PrimeField(3), 1);
    CHECK_THROWS_AS(quotient(m, bad), Error);
}

TEST_CASE("quotient dimensions on random modules") {
    std::mt19937_64 rng(9);
    const auto pres = presentation_of("kronecker3.qv");
    for (const auto& d : dimension_vectors(2, 3)) {
        for_each_representation(pres, PrimeField(3), d, 40, rng(), [&](const Representation& m) {
            for (const auto& s : all_submodules(m)) {
                const auto q = quotient(m, s);
                CHECK(q.dim() == m.dim() - s.dim());
                CHECK(restrict_to(m, s).dim() == s.dim());
            }
        });
    }
}

TEST_CASE("hom spaces and isomorphism") {
    const auto k2 = presentation_of("k2.qv");
    const PrimeField f(3);
    CHECK(hom_space(vertex_simple(k2, f, 0), vertex_simple(k2, f, 1)).dim() == 0);
    const auto m10 = k2_rep(k2, 3, 1, 0);
    const auto m01 = k2_rep(k2, 3, 0, 1);
    CHECK(are_isomorphic(m10, m10));
    CHECK_FALSE(are_isomorphic(m10, m01));
    CHECK(are_isomorphic(k2_rep(k2, 3, 1, 1), k2_rep(k2, 3, 2, 2)));
}

TEST_CASE("hom dimension is invariant under change of basis") {
    std::mt19937_64 rng(21);
    for (const char* file : {"k2.qv", "a3.qv", "kronecker3.qv", "loop_x2.qv"}) {
        const auto pres = presentation_of(file);
        std::vector<Representation> reps;
        for (const auto& d : dimension_vectors(pres->quiver().vertex_count(), 3)) {
            for_each_representation(pres, PrimeField(2), d, 8, rng(), [&](const Representation& m) { reps.push_back(m); });
        }
        for (std::size_t i = 0; i < reps.size(); i += 3) {
            for (std::size_t j = 0; j < reps.size(); j += 5) {
                const auto conj = random_conjugate(reps[i], rng);
                CHECK(hom_space(reps[i], reps[j]).dim() == hom_space(conj, reps[j]).dim());
                CHECK(hom_space(reps[j], reps[i]).dim() == hom_space(reps[j], conj).dim());
                CHECK(are_isomorphic(reps[i], conj));
            }
        }
    }
}

TEST_CASE("isomorphism is an equivalence relation on the corpus") {
    for (const char* file : {"k2.qv", "a3.qv", "kronecker3.qv", "loop_x2.qv"}) {
        const auto reps = load(file).reps;
        std::vector<Representation> all;
        for (const auto& r : reps) all.push_back(r.rep);
        std::mt19937_64 rng(4);
        for (const auto& r : reps) all.push_back(random_conjugate(r.rep, rng));
        const std::size_t n = all.size();
        std::vector<std::vector<bool>> iso(n, std::vector<bool>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) iso[i][j] = are_isomorphic(all[i], all[j]);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(iso[i][i]);
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(iso[i][j] == iso[j][i]);
                for (std::size_t k = 0; k < n; ++k) {
                    if (iso[i][j] && iso[j][k]) CHECK(iso[i][k]);
                }
            }
        }
    }
}

TEST_CASE("cycles acting as zero") {
    for (const auto& r : load("k2.qv").reps) CHECK(cycles_act_as_zero(r.rep, 3));
    const auto loop = presentation_of("loop_x2.qv");
    const auto nil = make_representation(loop, 2, DimensionVector({2}), {FpMatrix(2, 2, {0, 1, 0, 0})});
    CHECK_FALSE(cycles_act_as_zero(nil, 2));
    CHECK(cycles_act_as_zero(nil, 2, true));
    const auto plain = std::make_shared<const QuiverPresentation>(parse_presentation("vertices 1\narrow x 1 1\n"));
    const auto one = make_representation(plain, 2, DimensionVector({1}), {FpMatrix(1, 1, {1})});
    CHECK_FALSE(cycles_act_as_zero(one, 3));
    CHECK_FALSE(cycles_act_as_zero(one, 3, true));
}

TEST_CASE("direct sums") {
    const auto k2 = presentation_of("k2.qv");
    const PrimeField f(3);
    const auto s = direct_sum(vertex_simple(k2, f, 0), vertex_simple(k2, f, 1));
    CHECK(s.dim() == DimensionVector({1, 1}));
    CHECK(s.map(0) == FpMatrix(1, 1, {0}));
    CHECK(s.map(1) == FpMatrix(1, 1, {0}));
    const auto m = k2_rep(k2, 3, 1, 2);
    CHECK(are_isomorphic(direct_sum(m, zero_representation(k2, f)), m));
    CHECK(direct_sum(m, m).dim() == DimensionVector({2, 2}));
    CHECK_THROWS_AS(direct_sum(m, vertex_simple(k2, PrimeField(2), 0)), Error);
}

} // TEST_SUITE
