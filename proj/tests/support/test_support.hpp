#pragma once

// Shared helpers for the test binaries: data paths, fixture shortcuts,
// seeded generators and the independent oracles the properties compare
// against. Nothing here calls the library's own analysis visitors.

#include "cellcheck/formula.hpp"
#include "cellcheck/io.hpp"
#include "cellcheck/workbook.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace testing {

inline std::filesystem::path data_path(const std::string& name) {
    return std::filesystem::path(CELLCHECK_TEST_DATA) / name;
}

inline cellcheck::Workbook fixture(std::string_view text) {
    return cellcheck::parse_fixture(text);
}

/// Non-comment, non-blank lines of a data file.
inline std::vector<std::string> data_lines(const std::string& name) {
    std::ifstream in(data_path(name));
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

// ---------------------------------------------------------------------------
// Random formula trees

class AstGenerator {
public:
    explicit AstGenerator(std::uint32_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(int percent) { return uniform(1, 100) <= percent; }
    std::mt19937& rng() { return rng_; }

    /// Tree of at most `max_depth` levels (a lone leaf is depth 1).
    cellcheck::Expr tree(int max_depth) { return node(1, max_depth); }

    cellcheck::CellRef ref(int max_column = 12, int max_row = 30) {
        cellcheck::CellRef r;
        r.column = uniform(0, max_column);
        r.row = uniform(0, max_row);
        r.col_absolute = chance(25);
        r.row_absolute = chance(25);
        return r;
    }

    cellcheck::Expr leaf() {
        using namespace cellcheck;
        static const char* numbers[] = {"0", "1", "2", "3", "0.3", "0.5", "10", "100", "1.5E-3", "7.25"};
        static const char* texts[] = {"", "a", "pass", "x y", "1", "say \"hi\""};
        switch (uniform(0, 5)) {
            case 0:
            case 1: return number(numbers[uniform(0, 9)]);
            case 2: return chance(50) ? text(texts[uniform(0, 5)]) : boolean(chance(50));
            case 3:
            case 4: {
                CellRef r = ref();
                if (chance(15)) r.sheet = chance(50) ? "Data" : "My Sheet";
                return Expr{r};
            }
            default: {
                CellRef a = ref();
                CellRef b = ref();
                if (chance(15)) a.sheet = b.sheet = "Data";
                return range(a, b);
            }
        }
    }

private:
    cellcheck::Expr node(int depth, int max_depth) {
        using namespace cellcheck;
        if (depth >= max_depth || chance(20)) return leaf();
        static const BinaryOperator ops[] = {
            BinaryOperator::Add,   BinaryOperator::Subtract, BinaryOperator::Multiply, BinaryOperator::Divide,
            BinaryOperator::Power, BinaryOperator::Concat,   BinaryOperator::Equal,    BinaryOperator::NotEqual,
            BinaryOperator::Less,  BinaryOperator::LessEqual, BinaryOperator::Greater, BinaryOperator::GreaterEqual,
        };
        static const char* functions[] = {"SUM", "ROUND", "IF", "INDEX", "MAX", "AND", "PI", "VLOOKUP"};
        switch (uniform(0, 9)) {
            case 0:
            case 1:
            case 2:
            case 3: return binary(ops[uniform(0, 11)], node(depth + 1, max_depth), node(depth + 1, max_depth));
            case 4:
            case 5: {
                static const UnaryOperator unary_ops[] = {UnaryOperator::Negate, UnaryOperator::Plus,
                                                          UnaryOperator::Percent};
                return unary(unary_ops[uniform(0, 2)], node(depth + 1, max_depth));
            }
            case 6: return paren(node(depth + 1, max_depth));
            default: {
                std::vector<Expr> args;
                int count = uniform(0, 3);
                for (int i = 0; i < count; ++i) args.push_back(node(depth + 1, max_depth));
                return call(functions[uniform(0, 7)], std::move(args));
            }
        }
    }

    std::mt19937 rng_;
};

// ---------------------------------------------------------------------------
// Oracles: explicit-stack walks over the variant, independent of the
// recursive visitors in the library.

struct WalkCounts {
    std::size_t operations = 0;
    std::size_t max_depth = 0;
    std::size_t literal_leaves = 0;
    std::size_t tree_depth = 0;  // all node kinds, a single leaf is 1
};

inline WalkCounts brute_force_walk(const cellcheck::Expr& root) {
    using namespace cellcheck;
    WalkCounts counts;
    // (node, operation nodes strictly above it, all nodes above it)
    std::vector<std::tuple<const Expr*, std::size_t, std::size_t>> stack{{&root, 0, 0}};
    while (!stack.empty()) {
        auto [e, ops_above, above] = stack.back();
        stack.pop_back();
        const ExprNode& n = e->node;
        bool is_op = std::holds_alternative<BinaryOp>(n) || std::holds_alternative<UnaryOp>(n) ||
                     std::holds_alternative<FunctionCall>(n);
        std::size_t ops_here = ops_above + (is_op ? 1 : 0);
        if (is_op) ++counts.operations;
        if (ops_here > counts.max_depth) counts.max_depth = ops_here;
        if (above + 1 > counts.tree_depth) counts.tree_depth = above + 1;
        if (std::holds_alternative<NumberLiteral>(n) || std::holds_alternative<TextLiteral>(n) ||
            std::holds_alternative<BooleanLiteral>(n)) {
            ++counts.literal_leaves;
        }
        if (const auto* b = std::get_if<BinaryOp>(&n)) {
            stack.emplace_back(&*b->left, ops_here, above + 1);
            stack.emplace_back(&*b->right, ops_here, above + 1);
        } else if (const auto* u = std::get_if<UnaryOp>(&n)) {
            stack.emplace_back(&*u->operand, ops_here, above + 1);
        } else if (const auto* p = std::get_if<Paren>(&n)) {
            stack.emplace_back(&*p->inner, ops_here, above + 1);
        } else if (const auto* f = std::get_if<FunctionCall>(&n)) {
            for (const auto& arg : f->args) stack.emplace_back(&arg, ops_here, above + 1);
        }
    }
    return counts;
}

// ---------------------------------------------------------------------------
// Random workbooks

/// Fixture text for a one- or two-sheet workbook of numbers and random
/// formulas drawn from copyable templates.
inline std::string random_workbook_fixture(std::uint32_t seed) {
    AstGenerator gen(seed);
    static const char* templates[] = {
        "=A1+1",          "=A1*0.3",           "=INDEX($A$1:$C$10,2,3)", "=SUM(A1:A5)/5",
        "=A1+B1",         "=ROUND(A1*B1,1)",   "=A1+B1+C1+D1",           "=IF(A1>1,A1*2,B1-1)",
        "=C9",            "=Data!A1",          "=(A1+B1)*(C1-D1)/E1",    "=-A1%",
        "=MAX(A1,1,2)^2", "=INDEX(A1:A9,1)+1", "=A1&\"x\"",              "=SUM(A1:B2)*1",
    };
    std::string out = "sheet Main\nsheet Data\n";
    int rows = gen.uniform(3, 12);
    int columns = gen.uniform(2, 6);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < columns; ++c) {
            if (gen.chance(20)) continue;
            std::string address = "Main!" + cellcheck::format_a1(c, r) + "=";
            if (gen.chance(40)) {
                out += address + std::to_string(gen.uniform(0, 9)) + "\n";
            } else if (gen.chance(70)) {
                out += address + templates[gen.uniform(0, 15)] + "\n";
            } else {
                out += address + cellcheck::serialize(gen.tree(gen.uniform(2, 5))) + "\n";
            }
        }
    }
    for (int r = 0; r < 3; ++r) out += "Data!A" + std::to_string(r + 1) + "=" + std::to_string(r) + "\n";
    return out;
}

}  // namespace testing
