#include "doctest.h"

#include "qstab/algebra.hpp"
#include "qstab/catalog.hpp"

using namespace qstab;

TEST_CASE("parse a quiver with a relation") {
    AlgebraSpec alg = parse_algebra(
        "# radical square zero on linear A_3\n"
        "field p=3\n"
        "vertices 3\n"
        "arrow a1 1 2\n"
        "arrow a2 2 3\n"
        "relation a1.a2\n");
    CHECK(alg.p == 3);
    CHECK(alg.vertex_count == 3);
    REQUIRE(alg.arrows.size() == 2);
    CHECK(alg.arrows[0].name == "a1");
    CHECK(alg.arrows[0].source == 0);
    CHECK(alg.arrows[0].target == 1);
    CHECK(alg.arrow_index("a2") == 1);
    CHECK(alg.arrow_index("zz") == -1);
    REQUIRE(alg.relations.size() == 1);
    CHECK(alg.relations[0].source == 0);
    CHECK(alg.relations[0].target == 2);
    REQUIRE(alg.relations[0].terms.size() == 1);
    CHECK(alg.relations[0].terms[0].coeff == 1);
    CHECK(alg.relations[0].terms[0].arrows == std::vector<int>{0, 1});
}

TEST_CASE("field defaults to two") {
    AlgebraSpec alg = parse_algebra("vertices 1\n");
    CHECK(alg.p == 2);
    CHECK(alg.arrows.empty());
}

TEST_CASE("relation coefficients and sums") {
    AlgebraSpec alg = parse_algebra(
        "field p=5\n"
        "vertices 2\n"
        "arrow a 1 2\n"
        "arrow b 2 1\n"
        "arrow c 1 2\n"
        "relation a.b.a + 3*c.b.c\n");
    REQUIRE(alg.relations.size() == 1);
    REQUIRE(alg.relations[0].terms.size() == 2);
    CHECK(alg.relations[0].terms[1].coeff == 3);
    CHECK(alg.relations[0].terms[1].arrows == std::vector<int>{2, 1, 2});
}

TEST_CASE("parse and validation failures") {
    CHECK_THROWS_AS(parse_algebra("nonsense 3\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra("field p=x\nvertices 1\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra("field p=4\nvertices 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_algebra("field p=2\n"), ValidationError);
    CHECK_THROWS_AS(parse_algebra("vertices 0\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra("vertices 2\narrow a 1 2\narrow a 2 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_algebra("vertices 2\narrow a 1 3\n"), ValidationError);
    CHECK_THROWS_AS(parse_algebra("vertices 2\narrow a 1 2\nrelation a.z\n"), ValidationError);
    // Single arrows are not admissible relations.
    CHECK_THROWS_AS(parse_algebra("vertices 2\narrow a 1 2\nrelation a\n"), ValidationError);
    // a then b is not composable when both start at vertex 1.
    CHECK_THROWS_AS(
        parse_algebra("vertices 2\narrow a 1 2\narrow b 1 2\nrelation a.b\n"),
        ValidationError);
    // Terms of one relation must share endpoints.
    CHECK_THROWS_AS(parse_algebra("vertices 3\n"
                                  "arrow a 1 2\narrow b 2 3\narrow c 2 1\n"
                                  "relation a.b + a.c\n"),
                    ValidationError);
}

TEST_CASE("text round trip") {
    for (const char* id : {"kronecker", "a2", "a3", "a4:lrl", "a3:ll"}) {
        auto alg = builtin_algebra(id, 2);
        AlgebraSpec reparsed = parse_algebra(algebra_to_text(*alg));
        CHECK(algebra_to_text(reparsed) == algebra_to_text(*alg));
        CHECK(reparsed.vertex_count == alg->vertex_count);
        CHECK(reparsed.arrows.size() == alg->arrows.size());
    }
    AlgebraSpec rel = parse_algebra(
        "field p=3\nvertices 3\narrow a1 1 2\narrow a2 2 3\nrelation 2*a1.a2\n");
    AlgebraSpec again = parse_algebra(algebra_to_text(rel));
    CHECK(algebra_to_text(again) == algebra_to_text(rel));
    CHECK(again.relations[0].terms[0].coeff == 2);
}
