#pragma once

#include "cellcheck/formula_ast.hpp"
#include "cellcheck/workbook.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace cellcheck {

/// Scenario inputs. An override shadows whatever the workbook stores at the
/// address, literal or formula.
using Overrides = std::map<CellAddress, CellValue>;

struct EvaluationOptions {
    bool memoize = true;
};

/// One evaluation run over an immutable workbook. Owns its cache and cycle
/// bookkeeping; not thread-safe, but any number of runs may share a workbook.
class Evaluator {
public:
    explicit Evaluator(const Workbook& workbook, Overrides overrides = {}, EvaluationOptions options = {});

    /// Value of the cell. Empty cells read as Number(0). Division by zero and
    /// lookup misses yield error values; CycleError, UnsupportedFunction and
    /// EvalTypeError are thrown.
    CellValue evaluate(const CellAddress& address);

    /// Evaluates a free-standing expression as if it were stored at `origin`.
    CellValue evaluate_expression(const Expr& ast, const CellAddress& origin);

    struct Blank {};
    struct Range {
        CellAddress first;
        CellAddress last;
    };
    /// Intermediate result: a blank cell read, a scalar, or an unevaluated range.
    using Value = std::variant<Blank, CellValue, Range>;

private:
    std::optional<CellValue> cell_value(const CellAddress& address);
    Value eval(const Expr& e, const CellAddress& origin);
    Value eval_call(const FunctionCall& call, const CellAddress& origin);
    Value eval_binary(const BinaryOp& op, const CellAddress& origin);
    int resolve_sheet(const std::optional<std::string>& qualifier, const CellAddress& origin) const;

    double number_arg(const Expr& e, const CellAddress& origin);
    bool condition_arg(const Expr& e, const CellAddress& origin);
    std::vector<double> numbers_in(std::span<const Expr> args, const CellAddress& origin, bool count_only);
    Range range_arg(const Expr& e, const CellAddress& origin);

    const Workbook& workbook_;
    Overrides overrides_;
    EvaluationOptions options_;
    std::map<CellAddress, CellValue> cache_;
    std::set<CellAddress> in_progress_;
    std::vector<CellAddress> stack_;
};

CellValue evaluate_cell(const Workbook& workbook, const CellAddress& address, const Overrides& overrides = {});

/// Function names the evaluator can compute, sorted.
std::vector<std::string> supported_functions();

/// Rounds half away from zero at `digits` decimals (negative digits round to
/// tens, hundreds, ...). Works on the 15-significant-digit decimal rendering
/// of `value`, so ROUND(2.675, 2) is 2.68.
double round_half_away(double value, int digits);

struct CachedValueMismatch {
    CellAddress address;
    CellValue cached;
    std::string computed;  // value text or error message
};

/// Formula cells whose stored cached value disagrees with a fresh evaluation
/// (numbers beyond `tolerance`, other kinds by equality).
std::vector<CachedValueMismatch> cross_check_cached_values(const Workbook& workbook, double tolerance = 1e-9);

}  // namespace cellcheck
