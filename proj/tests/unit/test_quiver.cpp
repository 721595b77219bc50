#include "corpus.hpp"

#include "quiverstab/description.hpp"
#include "quiverstab/errors.hpp"
#include "quiverstab/quiver.hpp"
#include "quiverstab/representation.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace quiverstab;
using quiverstab::testing::load;

namespace {

std::vector<std::string> rendered(const Quiver& q, const std::vector<Path>& paths) {
    std::vector<std::string> out;
    for (const auto& p : paths) out.push_back(p.render(q));
    return out;
}

} // namespace

TEST_SUITE("quiver_core") {

TEST_CASE("Kronecker description has two parallel arrows and no relations") {
    const auto pres = parse_presentation("vertices 1 2\narrow a 1 2\narrow b 1 2\n");
    CHECK(pres.quiver().vertex_count() == 2);
    CHECK(pres.quiver().arrow_count() == 2);
    CHECK(pres.quiver().arrow_count_between(0, 1) == 2);
    CHECK(pres.relations().empty());
}

TEST_CASE("loop with x squared keeps its relation") {
    const auto pres = parse_presentation("vertices 1\narrow x 1 1\nrelation x*x\n");
    REQUIRE(pres.relations().size() == 1);
    const auto& rel = pres.relations()[0];
    CHECK(rel.terms().size() == 1);
    CHECK(rel.terms()[0].path.length() == 2);
    CHECK(rel.terms()[0].coefficient == 1);
}

TEST_CASE("an arrow to an undeclared vertex is reported with its position") {
    try {
        parse_presentation("vertices 1 2\narrow a 1 3\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 11);
        CHECK(e.detail() == "unknown vertex 3");
        CHECK(e.exit_code() == ExitCode::domain_error);
    }
}

TEST_CASE("syntax and semantic errors carry line and column") {
    CHECK_THROWS_AS(parse_presentation("vertices 1\nvertices 2\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("vertices 1 2\narow a 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("vertices 1 2 3\narrow a 1 2\narrow b 2 3\nrelation a + b\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("vertices 1\narrow x 1 1\nrelation e_1\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("vertices 1\narrow x 1 1\nrelation x*y\n"), ParseError);
    try {
        parse_presentation("vertices 1 2 3\narrow f 1 2\narrow g 2 3\nrelation f*g\n");
        FAIL("f*g applies g first and does not compose");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
}

TEST_CASE("length-one relations are accepted with a warning") {
    const auto doc = parse_description("vertices 1 2\narrow a 1 2\narrow b 1 2\nrelation a - b\n");
    CHECK(doc.presentation->relations().size() == 1);
    REQUIRE(doc.warnings.size() == 1);
    CHECK(doc.warnings[0].line == 4);
}

TEST_CASE("relations read right to left and take rational coefficients") {
    const auto pres = parse_presentation(
        "# comment\nvertices 1 2 3\narrow f 1 2\narrow g 2 3\narrow h 1 3\nrelation g*f - 1/2*h  # trailing\n");
    const auto& rel = pres.relations().at(0);
    REQUIRE(rel.terms().size() == 2);
    const auto& q = pres.quiver();
    CHECK(rel.terms()[0].path.arrows() == std::vector<std::size_t>{*q.find_arrow("f"), *q.find_arrow("g")});
    CHECK(rel.terms()[1].coefficient == Rational(-1, 2));
    CHECK(rel.render(q) == "1*g*f - 1/2*h");
}

TEST_CASE("acyclicity") {
    CHECK(is_acyclic(load("k2.qv").presentation->quiver()));
    CHECK(is_acyclic(load("a3.qv").presentation->quiver()));
    CHECK_FALSE(is_acyclic(load("loop_x2.qv").presentation->quiver()));
    CHECK_FALSE(is_acyclic(parse_presentation("vertices 1 2\narrow a 1 2\narrow b 2 1\n").quiver()));
}

TEST_CASE("path enumeration examples") {
    const auto k2 = load("k2.qv").presentation->quiver();
    CHECK(rendered(k2, enumerate_paths(k2, 0, 2)) == std::vector<std::string>{"e_1", "a", "b"});
    const auto a3 = load("a3.qv").presentation->quiver();
    CHECK(rendered(a3, enumerate_paths(a3, 0, 2)) == std::vector<std::string>{"e_1", "f", "g*f"});
    const auto loop = load("loop_x2.qv").presentation->quiver();
    CHECK(rendered(loop, enumerate_paths(loop, 0, 3)) == std::vector<std::string>{"e_1", "x", "x*x", "x*x*x"});
}

TEST_CASE("path enumeration stops at the cap on cyclic quivers") {
    const auto q = parse_presentation("vertices 1\narrow x 1 1\narrow y 1 1\n").quiver();
    CHECK_THROWS_AS(enumerate_paths(q, 0, 20, 1000), CapExceeded);
    CHECK(enumerate_paths(q, 0, 3, 1000).size() == 15);
}

TEST_CASE("enumerated paths are distinct and composable") {
    for (const char* file : {"k2.qv", "a3.qv", "kronecker3.qv", "loop_x2.qv"}) {
        const auto q = load(file).presentation->quiver();
        for (std::size_t i = 0; i < q.vertex_count(); ++i) {
            const auto paths = enumerate_paths(q, i, 4);
            std::set<std::vector<std::size_t>> seen;
            for (const auto& p : paths) {
                CHECK(seen.insert(p.arrows()).second);
                CHECK(p.source() == i);
                if (p.length() > 0) CHECK_NOTHROW(Path::from_arrows(q, p.arrows()));
            }
        }
    }
}

TEST_CASE("path counts match projective dimensions on acyclic quivers") {
    for (const char* file : {"k2.qv", "a3.qv", "kronecker3.qv"}) {
        const auto pres = load(file).presentation;
        const auto& q = pres->quiver();
        for (std::size_t i = 0; i < q.vertex_count(); ++i) {
            const auto proj = projective_module(pres, PrimeField(2), i);
            std::vector<int> counts(q.vertex_count(), 0);
            for (const auto& p : enumerate_paths(q, i, q.vertex_count())) ++counts[p.target()];
            CHECK(proj.dim() == DimensionVector(counts));
        }
    }
}

TEST_CASE("rendering and parsing round-trip on random presentations") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        std::vector<std::string> vertices;
        for (std::size_t i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
        std::vector<Arrow> arrows;
        const std::size_t m = rng() % 5;
        for (std::size_t a = 0; a < m; ++a) arrows.push_back({"a" + std::to_string(a), rng() % n, rng() % n});
        const Quiver q = Quiver::create(vertices, arrows);
        std::vector<Relation> relations;
        for (std::size_t i = 0; i < n && m > 0; ++i) {
            const auto paths = enumerate_paths(q, i, 3, 1000);
            std::vector<Term> terms;
            for (const auto& p : paths) {
                if (p.length() >= 1 && p.target() == paths.back().target() && rng() % 2 == 0) {
                    terms.push_back({Rational(static_cast<long long>(rng() % 7) - 3, 1 + rng() % 3), p});
                }
            }
            std::erase_if(terms, [](const Term& t) { return t.coefficient == 0; });
            if (!terms.empty()) relations.push_back(Relation::create(std::move(terms)));
        }
        const QuiverPresentation pres(q, relations);
        CHECK(parse_presentation(render_presentation(pres)) == pres);
    }
}

} // TEST_SUITE
