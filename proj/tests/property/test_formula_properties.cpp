#include "cellcheck/errors.hpp"
#include "cellcheck/formula.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace cellcheck;
using testing::AstGenerator;

TEST_CASE("round trip over the formula corpus") {
    auto corpus = testing::data_lines("formulas.txt");
    REQUIRE(corpus.size() >= 100);
    for (const auto& source : corpus) {
        CAPTURE(source);
        Expr ast = parse_formula(source);
        std::string text = serialize(ast);
        CHECK(parse_formula(text) == ast);
        CHECK(serialize(parse_formula(text)) == text);  // canonical text is a fixed point
    }
}

TEST_CASE("round trip over random trees, modulo parentheses") {
    AstGenerator gen(20240611);
    for (int i = 0; i < 2000; ++i) {
        Expr ast = gen.tree(gen.uniform(1, 7));
        std::string text = serialize(ast);
        CAPTURE(text);
        CHECK(strip_parens(parse_formula(text)) == strip_parens(ast));
    }
}

TEST_CASE("operation count and nesting match an explicit-stack walk") {
    AstGenerator gen(1337);
    for (int i = 0; i < 1000; ++i) {
        Expr ast = gen.tree(6);
        auto oracle = testing::brute_force_walk(ast);
        CAPTURE(serialize(ast));
        REQUIRE(oracle.tree_depth <= 6);
        CHECK(operation_count(ast) == oracle.operations);
        CHECK(max_nesting_depth(ast) == oracle.max_depth);
        CHECK(operation_count(ast) >= max_nesting_depth(ast));
    }
}

TEST_CASE("constants_in returns one entry per literal leaf") {
    AstGenerator gen(99);
    for (int i = 0; i < 1000; ++i) {
        Expr ast = gen.tree(gen.uniform(1, 6));
        CHECK(constants_in(ast).size() == testing::brute_force_walk(ast).literal_leaves);
    }
}

TEST_CASE("normalize_r1c1 is translation invariant") {
    AstGenerator gen(4242);
    int checked = 0;
    for (int i = 0; i < 1500; ++i) {
        Expr ast = gen.tree(gen.uniform(1, 5));
        CellAddress origin{0, gen.uniform(0, 15), gen.uniform(0, 40)};
        int dc = gen.uniform(-origin.column, 20);
        int dr = gen.uniform(-origin.row, 50);
        Expr moved;
        try {
            moved = translate(ast, dc, dr);
        } catch (const Error&) {
            continue;  // a reference would leave the grid
        }
        CellAddress shifted{0, origin.column + dc, origin.row + dr};
        CAPTURE(serialize(ast));
        CAPTURE(serialize(moved));
        CHECK(normalize_r1c1(ast, origin) == normalize_r1c1(moved, shifted));
        ++checked;
    }
    CHECK(checked > 500);
}
