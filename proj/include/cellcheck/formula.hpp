#pragma once

#include "cellcheck/address.hpp"
#include "cellcheck/formula_ast.hpp"
#include "cellcheck/workbook.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cellcheck {

/// Parses formula text beginning with "=". Precedence from loosest to
/// tightest: comparison, "&", "+ -", "* /", "^", prefix "- +", postfix "%".
/// Binary operators are left-associative. Throws ParseError.
Expr parse_formula(std::string_view source);

/// Canonical text with a leading "=". Function names and references are
/// uppercased; Paren nodes are kept. Parentheses are inserted only where the
/// tree shape could not otherwise be expressed.
std::string serialize(const Expr& ast);

/// Copy of `ast` with every Paren node removed.
Expr strip_parens(const Expr& ast);

/// Reference target after resolving the sheet qualifier. For single cells
/// `first == last`.
struct ResolvedReference {
    CellAddress first;
    CellAddress last;
    CellAddress origin;

    bool is_range() const { return !(first == last); }
    friend bool operator==(const ResolvedReference&, const ResolvedReference&) = default;
};

/// One entry per CellRef/RangeRef occurrence, in left-to-right order.
/// Unqualified references resolve to the origin's sheet. Throws UnknownSheet.
std::vector<ResolvedReference> referenced_cells(const Expr& ast, const CellAddress& origin,
                                                const Workbook& workbook);

/// Non-throwing variant: qualifiers naming no worksheet are skipped and
/// their names appended to `unresolved`.
std::vector<ResolvedReference> referenced_cells(const Expr& ast, const CellAddress& origin,
                                                const Workbook& workbook, std::vector<std::string>& unresolved);

struct ConstantUse {
    std::string text;                           // "0.3", "\"abc\"", "TRUE"
    std::optional<std::string> enclosing_function;
    friend bool operator==(const ConstantUse&, const ConstantUse&) = default;
};

/// Every literal leaf, in left-to-right order, with its nearest enclosing call.
std::vector<ConstantUse> constants_in(const Expr& ast);

/// Operator applications plus function calls. Literals, references and
/// parentheses count zero.
std::size_t operation_count(const Expr& ast);

/// Longest chain of nested operator/function nodes on any root-to-leaf path.
std::size_t max_nesting_depth(const Expr& ast);

/// Copy-invariant signature: relative components become offsets from
/// `origin` ("R[-1]C[0]"), absolute ones fixed 1-based coordinates ("R4C2").
std::string normalize_r1c1(const Expr& ast, const CellAddress& origin);

/// Shifts every relative reference component by (columns, rows), as a
/// copy-fill would. Throws Error if a reference leaves the grid.
Expr translate(const Expr& ast, int columns, int rows);

}  // namespace cellcheck
