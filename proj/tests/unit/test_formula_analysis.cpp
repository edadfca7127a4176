#include "cellcheck/errors.hpp"
#include "cellcheck/formula.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace cellcheck;
using testing::fixture;

namespace {

std::vector<ConstantUse> constants(std::string_view source) {
    return constants_in(parse_formula(source));
}

}  // namespace

TEST_CASE("referenced_cells") {
    auto wb = fixture("sheet Sheet1\nsheet Sheet2\nSheet1!A1=1\n");
    CellAddress b2{0, 1, 1};

    CHECK(referenced_cells(parse_formula("=5"), b2, wb).empty());

    auto refs = referenced_cells(parse_formula("=A1+C5"), b2, wb);
    REQUIRE(refs.size() == 2);
    CHECK(refs[0].first == CellAddress{0, 0, 0});
    CHECK(refs[1].first == CellAddress{0, 2, 4});
    CHECK(refs[1].origin == b2);
    CHECK_FALSE(refs[0].is_range());

    auto cross = referenced_cells(parse_formula("=Sheet2!A1"), b2, wb);
    REQUIRE(cross.size() == 1);
    CHECK(cross[0].first == CellAddress{1, 0, 0});

    CHECK_THROWS_AS(referenced_cells(parse_formula("=Nope!A1"), b2, wb), UnknownSheet);
    std::vector<std::string> unresolved;
    CHECK(referenced_cells(parse_formula("=Nope!A1+A1"), b2, wb, unresolved).size() == 1);
    CHECK(unresolved == std::vector<std::string>{"Nope"});
}

TEST_CASE("ranges are normalized to top-left / bottom-right") {
    auto wb = fixture("S!A1=1\n");
    auto refs = referenced_cells(parse_formula("=SUM(C5:A1)"), {0, 3, 3}, wb);
    REQUIRE(refs.size() == 1);
    CHECK(refs[0].first == CellAddress{0, 0, 0});
    CHECK(refs[0].last == CellAddress{0, 2, 4});
    CHECK(refs[0].is_range());
}

TEST_CASE("constants_in") {
    CHECK(constants("=A1+B1").empty());
    CHECK(constants("=A1*0.3+1") ==
          std::vector<ConstantUse>{{"0.3", std::nullopt}, {"1", std::nullopt}});
    CHECK(constants("=INDEX(A1:C10,2,3)") ==
          std::vector<ConstantUse>{{"2", "INDEX"}, {"3", "INDEX"}});
    // nearest enclosing call wins
    CHECK(constants("=INDEX(A1:A9,ROUND(A1,1))") == std::vector<ConstantUse>{{"1", "ROUND"}});
    CHECK(constants("=IF(A1,\"yes\",TRUE)") ==
          std::vector<ConstantUse>{{"\"yes\"", "IF"}, {"TRUE", "IF"}});
    CHECK(constants("=-1") == std::vector<ConstantUse>{{"1", std::nullopt}});
}

TEST_CASE("operation_count and max_nesting_depth") {
    struct Case {
        const char* source;
        std::size_t ops;
        std::size_t depth;
    };
    for (const Case& c : {Case{"=A1", 0, 0}, Case{"=A1+B1", 1, 1}, Case{"=ROUND(SUM(A1:A3)/3,1)", 3, 3},
                          Case{"=A1+B1+C1+D1", 3, 3}, Case{"=(A1+B1)", 1, 1}, Case{"=((((A1))))", 0, 0},
                          Case{"=10%", 1, 1}, Case{"=-A1%", 2, 2}, Case{"=SUM(A1:A9)", 1, 1},
                          Case{"=PI()", 1, 1}, Case{"=IF(A1>1,A1*2,B1-1)", 4, 2}, Case{"=\"x\"", 0, 0}}) {
        CAPTURE(c.source);
        Expr ast = parse_formula(c.source);
        CHECK(operation_count(ast) == c.ops);
        CHECK(max_nesting_depth(ast) == c.depth);
    }
}

TEST_CASE("normalize_r1c1") {
    CellAddress b2{0, 1, 1};
    CellAddress c3{0, 2, 2};
    CHECK(normalize_r1c1(parse_formula("=A1"), b2) == "=R[-1]C[-1]");
    CHECK(normalize_r1c1(parse_formula("=A1"), b2) == normalize_r1c1(parse_formula("=B2"), c3));
    CHECK(normalize_r1c1(parse_formula("=$A$1"), b2) == "=R1C1");
    CHECK(normalize_r1c1(parse_formula("=$A$1"), b2) == normalize_r1c1(parse_formula("=$A$1"), c3));
    CHECK(normalize_r1c1(parse_formula("=A$1*0.3"), b2) == "=R1C[-1]*0.3");
    CHECK(normalize_r1c1(parse_formula("=B1*0.3"), b2) == "=R[-1]C[0]*0.3");
    CHECK(normalize_r1c1(parse_formula("=data!A1:B2"), b2) == "=DATA!R[-1]C[-1]:R[0]C[0]");
    CHECK(normalize_r1c1(parse_formula("=A1"), b2) != normalize_r1c1(parse_formula("=A1"), c3));
}

TEST_CASE("translate") {
    Expr moved = translate(parse_formula("=SUM($A$1:A1)+A$1+$B2"), 2, 3);
    CHECK(serialize(moved) == "=SUM($A$1:C4)+C$1+$B5");
    CHECK_THROWS_AS(translate(parse_formula("=A1"), -1, 0), Error);
}
