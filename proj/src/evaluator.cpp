#include "cellcheck/evaluator.hpp"

#include "cellcheck/errors.hpp"
#include "cellcheck/formula.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace cellcheck {

CycleError::CycleError(std::vector<std::string> path)
    : Error([&] {
          std::string message = "circular reference: ";
          for (std::size_t i = 0; i < path.size(); ++i) {
              if (i) message += " -> ";
              message += path[i];
          }
          return message;
      }()),
      path_(std::move(path)) {}

namespace {

// Error values travel up the expression as an exception until a cell
// boundary (or IFERROR) turns them back into a CellValue.
struct ErrorSignal {
    std::string code;
};

[[noreturn]] void raise(const char* code) { throw ErrorSignal{code}; }

using Value = Evaluator::Value;
using Blank = Evaluator::Blank;
using Range = Evaluator::Range;

const CellValue* scalar_of(const Value& v) { return std::get_if<CellValue>(&v); }

CellValue to_cell_value(const Value& v) {
    if (std::holds_alternative<Blank>(v)) return CellValue::number(0);
    if (const auto* s = scalar_of(v)) return *s;
    return CellValue::error("#VALUE!");
}

double to_number(const Value& v) {
    if (std::holds_alternative<Blank>(v)) return 0.0;
    if (std::holds_alternative<Range>(v)) raise("#VALUE!");
    const CellValue& s = std::get<CellValue>(v);
    if (s.is_number()) return s.as_number();
    if (s.is_boolean()) return s.as_boolean() ? 1.0 : 0.0;
    if (s.is_error()) throw ErrorSignal{s.as_error()};
    throw EvalTypeError("text \"" + s.as_text() + "\" used in arithmetic");
}

std::string to_text(const Value& v) {
    if (std::holds_alternative<Blank>(v)) return "";
    if (std::holds_alternative<Range>(v)) raise("#VALUE!");
    const CellValue& s = std::get<CellValue>(v);
    if (s.is_error()) throw ErrorSignal{s.as_error()};
    if (s.is_number()) return format_number(s.as_number());
    return s.to_string();
}

CellValue checked_number(double value) {
    if (!std::isfinite(value)) raise("#NUM!");
    return CellValue::number(value);
}

// Type rank for mixed comparisons: numbers < text < booleans.
int type_rank(const CellValue& v) {
    if (v.is_number()) return 0;
    if (v.is_text()) return 1;
    return 2;
}

int compare_text(const std::string& a, const std::string& b) {
    std::string ua = to_upper(a);
    std::string ub = to_upper(b);
    return ua < ub ? -1 : (ua > ub ? 1 : 0);
}

CellValue blank_as(const CellValue& other) {
    if (other.is_text()) return CellValue::text("");
    if (other.is_boolean()) return CellValue::boolean(false);
    return CellValue::number(0);
}

int compare_values(const Value& lhs, const Value& rhs) {
    if (std::holds_alternative<Range>(lhs) || std::holds_alternative<Range>(rhs)) raise("#VALUE!");
    if (std::holds_alternative<Blank>(lhs) && std::holds_alternative<Blank>(rhs)) return 0;
    CellValue a = std::holds_alternative<Blank>(lhs) ? blank_as(std::get<CellValue>(rhs)) : std::get<CellValue>(lhs);
    CellValue b = std::holds_alternative<Blank>(rhs) ? blank_as(a) : std::get<CellValue>(rhs);
    if (a.is_error()) throw ErrorSignal{a.as_error()};
    if (b.is_error()) throw ErrorSignal{b.as_error()};
    if (type_rank(a) != type_rank(b)) return type_rank(a) < type_rank(b) ? -1 : 1;
    if (a.is_number()) return a.as_number() < b.as_number() ? -1 : (a.as_number() > b.as_number() ? 1 : 0);
    if (a.is_text()) return compare_text(a.as_text(), b.as_text());
    return static_cast<int>(a.as_boolean()) - static_cast<int>(b.as_boolean());
}

bool lookup_equal(const CellValue& cell, const CellValue& key) {
    if (type_rank(cell) != type_rank(key) || cell.is_error() || key.is_error()) return false;
    if (cell.is_number()) return cell.as_number() == key.as_number();
    if (cell.is_text()) return compare_text(cell.as_text(), key.as_text()) == 0;
    return cell.as_boolean() == key.as_boolean();
}

enum class RoundMode { HalfAway, Up, Down };

double decimal_round(double value, int digits, RoundMode mode) {
    if (value == 0.0 || !std::isfinite(value)) return value;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.14e", std::fabs(value));
    // buf holds d.dddddddddddddde[+-]XX: 15 significant digits.
    std::string mantissa;
    mantissa.push_back(buf[0]);
    mantissa.append(buf + 2, buf + 16);
    int exponent = std::atoi(buf + 17);
    int keep = exponent + 1 + digits;  // mantissa digits left of the rounding point
    if (keep >= static_cast<int>(mantissa.size())) return value;

    std::string kept = keep > 0 ? mantissa.substr(0, static_cast<std::size_t>(keep)) : std::string("0");
    std::string rest = keep >= 0 ? mantissa.substr(static_cast<std::size_t>(keep)) : "0" + mantissa;
    bool bump = false;
    switch (mode) {
        case RoundMode::HalfAway: bump = rest[0] >= '5'; break;
        case RoundMode::Up: bump = rest.find_first_not_of('0') != std::string::npos; break;
        case RoundMode::Down: break;
    }
    if (bump) {
        auto i = kept.size();
        while (i > 0 && kept[i - 1] == '9') kept[--i] = '0';
        if (i == 0) {
            kept.insert(kept.begin(), '1');
        } else {
            ++kept[i - 1];
        }
    }
    // The retained integer counts units of 10^-digits.
    std::string text = kept + "e" + std::to_string(-digits);
    double magnitude = std::strtod(text.c_str(), nullptr);
    return value < 0 ? -magnitude : magnitude;
}

}  // namespace

double round_half_away(double value, int digits) {
    return decimal_round(value, digits, RoundMode::HalfAway);
}

Evaluator::Evaluator(const Workbook& workbook, Overrides overrides, EvaluationOptions options)
    : workbook_(workbook), overrides_(std::move(overrides)), options_(options) {}

CellValue Evaluator::evaluate(const CellAddress& address) {
    auto value = cell_value(address);
    return value ? *value : CellValue::number(0);
}

CellValue Evaluator::evaluate_expression(const Expr& ast, const CellAddress& origin) {
    try {
        return to_cell_value(eval(ast, origin));
    } catch (const ErrorSignal& signal) {
        return CellValue::error(signal.code);
    }
}

std::optional<CellValue> Evaluator::cell_value(const CellAddress& address) {
    if (auto it = overrides_.find(address); it != overrides_.end()) return it->second;
    if (options_.memoize) {
        if (auto it = cache_.find(address); it != cache_.end()) return it->second;
    }
    const CellContent* content = workbook_.find(address);
    if (!content) return std::nullopt;
    if (content->is_literal()) return content->literal();

    if (in_progress_.count(address)) {
        std::vector<std::string> path;
        auto begin = std::find(stack_.begin(), stack_.end(), address);
        for (auto it = begin; it != stack_.end(); ++it) path.push_back(workbook_.describe(*it));
        path.push_back(workbook_.describe(address));
        throw CycleError(std::move(path));
    }
    in_progress_.insert(address);
    stack_.push_back(address);
    CellValue result;
    try {
        result = evaluate_expression(content->formula().ast, address);
    } catch (...) {
        in_progress_.erase(address);
        stack_.pop_back();
        throw;
    }
    in_progress_.erase(address);
    stack_.pop_back();
    if (options_.memoize) cache_.emplace(address, result);
    return result;
}

int Evaluator::resolve_sheet(const std::optional<std::string>& qualifier, const CellAddress& origin) const {
    if (!qualifier) return origin.sheet_index;
    auto index = workbook_.sheet_index(*qualifier);
    if (!index) raise("#REF!");
    return *index;
}

Value Evaluator::eval(const Expr& e, const CellAddress& origin) {
    if (const auto* n = e.as<NumberLiteral>()) return CellValue::number(n->value);
    if (const auto* t = e.as<TextLiteral>()) return CellValue::text(t->value);
    if (const auto* b = e.as<BooleanLiteral>()) return CellValue::boolean(b->value);
    if (const auto* r = e.as<CellRef>()) {
        CellAddress target{resolve_sheet(r->sheet, origin), r->column, r->row};
        auto value = cell_value(target);
        if (!value) return Blank{};
        return *value;
    }
    if (e.as<RangeRef>()) return range_arg(e, origin);
    if (const auto* p = e.as<Paren>()) return eval(*p->inner, origin);
    if (const auto* u = e.as<UnaryOp>()) {
        double x = to_number(eval(*u->operand, origin));
        switch (u->op) {
            case UnaryOperator::Negate: return checked_number(-x);
            case UnaryOperator::Plus: return checked_number(x);
            case UnaryOperator::Percent: return checked_number(x / 100.0);
        }
    }
    if (const auto* b = e.as<BinaryOp>()) return eval_binary(*b, origin);
    return eval_call(*e.as<FunctionCall>(), origin);
}

Value Evaluator::eval_binary(const BinaryOp& op, const CellAddress& origin) {
    Value lhs = eval(*op.left, origin);
    Value rhs = eval(*op.right, origin);
    switch (op.op) {
        case BinaryOperator::Add: return checked_number(to_number(lhs) + to_number(rhs));
        case BinaryOperator::Subtract: return checked_number(to_number(lhs) - to_number(rhs));
        case BinaryOperator::Multiply: return checked_number(to_number(lhs) * to_number(rhs));
        case BinaryOperator::Divide: {
            double numerator = to_number(lhs);
            double denominator = to_number(rhs);
            if (denominator == 0.0) return CellValue::error("#DIV/0!");
            return checked_number(numerator / denominator);
        }
        case BinaryOperator::Power: {
            double base = to_number(lhs);
            double exponent = to_number(rhs);
            if (base == 0.0 && exponent == 0.0) return CellValue::error("#NUM!");
            if (base == 0.0 && exponent < 0.0) return CellValue::error("#DIV/0!");
            return checked_number(std::pow(base, exponent));
        }
        case BinaryOperator::Concat: return CellValue::text(to_text(lhs) + to_text(rhs));
        case BinaryOperator::Equal: return CellValue::boolean(compare_values(lhs, rhs) == 0);
        case BinaryOperator::NotEqual: return CellValue::boolean(compare_values(lhs, rhs) != 0);
        case BinaryOperator::Less: return CellValue::boolean(compare_values(lhs, rhs) < 0);
        case BinaryOperator::LessEqual: return CellValue::boolean(compare_values(lhs, rhs) <= 0);
        case BinaryOperator::Greater: return CellValue::boolean(compare_values(lhs, rhs) > 0);
        case BinaryOperator::GreaterEqual: return CellValue::boolean(compare_values(lhs, rhs) >= 0);
    }
    raise("#VALUE!");
}

double Evaluator::number_arg(const Expr& e, const CellAddress& origin) {
    return to_number(eval(e, origin));
}

bool Evaluator::condition_arg(const Expr& e, const CellAddress& origin) {
    Value v = eval(e, origin);
    if (std::holds_alternative<Blank>(v)) return false;
    if (std::holds_alternative<Range>(v)) raise("#VALUE!");
    const CellValue& s = std::get<CellValue>(v);
    if (s.is_boolean()) return s.as_boolean();
    if (s.is_number()) return s.as_number() != 0.0;
    if (s.is_error()) throw ErrorSignal{s.as_error()};
    throw EvalTypeError("text \"" + s.as_text() + "\" used as a condition");
}

Range Evaluator::range_arg(const Expr& e, const CellAddress& origin) {
    if (const auto* r = e.as<CellRef>()) {
        CellAddress a{resolve_sheet(r->sheet, origin), r->column, r->row};
        return Range{a, a};
    }
    if (const auto* rr = e.as<RangeRef>()) {
        int sheet = resolve_sheet(rr->start.sheet, origin);
        return Range{{sheet, std::min(rr->start.column, rr->end.column), std::min(rr->start.row, rr->end.row)},
                     {sheet, std::max(rr->start.column, rr->end.column), std::max(rr->start.row, rr->end.row)}};
    }
    if (const auto* p = e.as<Paren>()) return range_arg(*p->inner, origin);
    raise("#VALUE!");
}

// Numeric arguments in the aggregate-function sense: references contribute
// only their numeric cells, direct scalars are coerced.
std::vector<double> Evaluator::numbers_in(std::span<const Expr> args, const CellAddress& origin, bool count_only) {
    std::vector<double> out;
    for (const auto& arg : args) {
        if (arg.as<CellRef>() || arg.as<RangeRef>()) {
            Range r = range_arg(arg, origin);
            for (int row = r.first.row; row <= r.last.row; ++row) {
                for (int col = r.first.column; col <= r.last.column; ++col) {
                    auto v = cell_value({r.first.sheet_index, col, row});
                    if (!v) continue;
                    if (v->is_error()) {
                        if (count_only) continue;
                        throw ErrorSignal{v->as_error()};
                    }
                    if (v->is_number()) out.push_back(v->as_number());
                }
            }
            continue;
        }
        Value v = eval(arg, origin);
        if (count_only) {
            if (const auto* s = scalar_of(v); s && (s->is_number() || s->is_boolean())) out.push_back(0);
            continue;
        }
        out.push_back(to_number(v));
    }
    return out;
}

namespace {

void require_args(const FunctionCall& call, std::size_t min, std::size_t max) {
    if (call.args.size() < min || call.args.size() > max) {
        throw EvalTypeError(call.name + " called with " + std::to_string(call.args.size()) + " argument(s)");
    }
}

}  // namespace

Value Evaluator::eval_call(const FunctionCall& call, const CellAddress& origin) {
    const std::string& name = call.name;
    std::span<const Expr> args(call.args);
    constexpr std::size_t kMany = 255;

    auto cell_at = [&](const Range& r, int row_offset, int col_offset) -> Value {
        auto v = cell_value({r.first.sheet_index, r.first.column + col_offset, r.first.row + row_offset});
        if (!v) return Blank{};
        return *v;
    };

    if (name == "SUM") {
        require_args(call, 1, kMany);
        double total = 0;
        for (double x : numbers_in(args, origin, false)) total += x;
        return checked_number(total);
    }
    if (name == "PRODUCT") {
        require_args(call, 1, kMany);
        double total = 1;
        for (double x : numbers_in(args, origin, false)) total *= x;
        return checked_number(total);
    }
    if (name == "AVERAGE") {
        require_args(call, 1, kMany);
        auto values = numbers_in(args, origin, false);
        if (values.empty()) return CellValue::error("#DIV/0!");
        double total = 0;
        for (double x : values) total += x;
        return checked_number(total / static_cast<double>(values.size()));
    }
    if (name == "MIN" || name == "MAX") {
        require_args(call, 1, kMany);
        auto values = numbers_in(args, origin, false);
        if (values.empty()) return CellValue::number(0);
        return CellValue::number(name == "MIN" ? *std::min_element(values.begin(), values.end())
                                               : *std::max_element(values.begin(), values.end()));
    }
    if (name == "COUNT") {
        require_args(call, 1, kMany);
        return CellValue::number(static_cast<double>(numbers_in(args, origin, true).size()));
    }
    if (name == "COUNTA") {
        require_args(call, 1, kMany);
        std::size_t count = 0;
        for (const auto& arg : args) {
            if (arg.as<CellRef>() || arg.as<RangeRef>()) {
                Range r = range_arg(arg, origin);
                for (int row = r.first.row; row <= r.last.row; ++row) {
                    for (int col = r.first.column; col <= r.last.column; ++col) {
                        if (cell_value({r.first.sheet_index, col, row})) ++count;
                    }
                }
            } else {
                ++count;
            }
        }
        return CellValue::number(static_cast<double>(count));
    }
    if (name == "SUMPRODUCT") {
        require_args(call, 1, kMany);
        std::vector<Range> ranges;
        for (const auto& arg : args) ranges.push_back(range_arg(arg, origin));
        int rows = ranges[0].last.row - ranges[0].first.row + 1;
        int cols = ranges[0].last.column - ranges[0].first.column + 1;
        for (const auto& r : ranges) {
            if (r.last.row - r.first.row + 1 != rows || r.last.column - r.first.column + 1 != cols) {
                return CellValue::error("#VALUE!");
            }
        }
        double total = 0;
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) {
                double product = 1;
                for (const auto& r : ranges) {
                    Value v = cell_at(r, i, j);
                    const CellValue* s = scalar_of(v);
                    if (s && s->is_error()) throw ErrorSignal{s->as_error()};
                    product *= (s && s->is_number()) ? s->as_number() : 0.0;
                }
                total += product;
            }
        }
        return checked_number(total);
    }
    if (name == "ROUND" || name == "ROUNDUP" || name == "ROUNDDOWN") {
        require_args(call, 2, 2);
        double x = number_arg(args[0], origin);
        double digits = std::trunc(number_arg(args[1], origin));
        RoundMode mode = name == "ROUND" ? RoundMode::HalfAway : (name == "ROUNDUP" ? RoundMode::Up : RoundMode::Down);
        return checked_number(decimal_round(x, static_cast<int>(std::clamp(digits, -300.0, 300.0)), mode));
    }
    if (name == "ABS") {
        require_args(call, 1, 1);
        return checked_number(std::fabs(number_arg(args[0], origin)));
    }
    if (name == "INT") {
        require_args(call, 1, 1);
        return checked_number(std::floor(number_arg(args[0], origin)));
    }
    if (name == "IF") {
        require_args(call, 2, 3);
        if (condition_arg(args[0], origin)) return eval(args[1], origin);
        if (args.size() == 3) return eval(args[2], origin);
        return CellValue::boolean(false);
    }
    if (name == "IFERROR") {
        require_args(call, 2, 2);
        try {
            Value v = eval(args[0], origin);
            if (const auto* s = scalar_of(v); s && s->is_error()) return eval(args[1], origin);
            return v;
        } catch (const ErrorSignal&) {
            return eval(args[1], origin);
        }
    }
    if (name == "AND" || name == "OR") {
        require_args(call, 1, kMany);
        bool is_and = name == "AND";
        bool result = is_and;
        bool seen = false;
        for (const auto& arg : args) {
            std::vector<Value> values;
            if (arg.as<CellRef>() || arg.as<RangeRef>()) {
                Range r = range_arg(arg, origin);
                for (int row = 0; row <= r.last.row - r.first.row; ++row) {
                    for (int col = 0; col <= r.last.column - r.first.column; ++col) {
                        values.push_back(cell_at(r, row, col));
                    }
                }
            } else {
                values.push_back(eval(arg, origin));
            }
            for (const auto& v : values) {
                const CellValue* s = scalar_of(v);
                if (!s || s->is_text()) continue;
                if (s->is_error()) throw ErrorSignal{s->as_error()};
                bool b = s->is_boolean() ? s->as_boolean() : s->as_number() != 0.0;
                seen = true;
                result = is_and ? (result && b) : (result || b);
            }
        }
        if (!seen) return CellValue::error("#VALUE!");
        return CellValue::boolean(result);
    }
    if (name == "NOT") {
        require_args(call, 1, 1);
        return CellValue::boolean(!condition_arg(args[0], origin));
    }
    if (name == "INDEX") {
        require_args(call, 2, 3);
        Range r = range_arg(args[0], origin);
        int height = r.last.row - r.first.row + 1;
        int width = r.last.column - r.first.column + 1;
        double first = std::trunc(number_arg(args[1], origin));
        double row_index = first;
        double col_index = 1;
        if (args.size() == 3) {
            col_index = std::trunc(number_arg(args[2], origin));
        } else if (height == 1) {
            row_index = 1;
            col_index = first;
        }
        if (row_index < 1 || col_index < 1 || row_index > height || col_index > width) {
            return CellValue::error("#REF!");
        }
        return cell_at(r, static_cast<int>(row_index) - 1, static_cast<int>(col_index) - 1);
    }
    if (name == "VLOOKUP") {
        require_args(call, 3, 4);
        Value key_value = eval(args[0], origin);
        if (std::holds_alternative<Range>(key_value)) raise("#VALUE!");
        CellValue key = to_cell_value(key_value);
        if (key.is_error()) throw ErrorSignal{key.as_error()};
        Range table = range_arg(args[1], origin);
        double column = std::trunc(number_arg(args[2], origin));
        bool approximate = args.size() == 4 ? condition_arg(args[3], origin) : true;
        int width = table.last.column - table.first.column + 1;
        int height = table.last.row - table.first.row + 1;
        if (column < 1) return CellValue::error("#VALUE!");
        if (column > width) return CellValue::error("#REF!");
        std::optional<int> hit;
        for (int row = 0; row < height; ++row) {
            Value v = cell_at(table, row, 0);
            const CellValue* s = scalar_of(v);
            if (!s) continue;
            if (approximate) {
                if (type_rank(*s) != type_rank(key) || s->is_error()) continue;
                if (compare_values(*s, key) <= 0) {
                    hit = row;
                } else {
                    break;  // first column is sorted ascending
                }
            } else if (lookup_equal(*s, key)) {
                hit = row;
                break;
            }
        }
        if (!hit) return CellValue::error("#N/A");
        return cell_at(table, *hit, static_cast<int>(column) - 1);
    }
    if (name == "MATCH") {
        require_args(call, 2, 3);
        CellValue key = to_cell_value(eval(args[0], origin));
        if (key.is_error()) throw ErrorSignal{key.as_error()};
        Range r = range_arg(args[1], origin);
        int type = args.size() == 3 ? static_cast<int>(number_arg(args[2], origin)) : 1;
        int height = r.last.row - r.first.row + 1;
        int width = r.last.column - r.first.column + 1;
        if (height != 1 && width != 1) return CellValue::error("#N/A");
        int length = std::max(height, width);
        std::optional<int> hit;
        for (int i = 0; i < length; ++i) {
            Value v = height == 1 ? cell_at(r, 0, i) : cell_at(r, i, 0);
            const CellValue* s = scalar_of(v);
            if (!s || s->is_error()) continue;
            if (type == 0) {
                if (lookup_equal(*s, key)) {
                    hit = i;
                    break;
                }
                continue;
            }
            if (type_rank(*s) != type_rank(key)) continue;
            int c = compare_values(*s, key);
            if ((type > 0 && c <= 0) || (type < 0 && c >= 0)) {
                hit = i;
            } else {
                break;
            }
        }
        if (!hit) return CellValue::error("#N/A");
        return CellValue::number(*hit + 1);
    }
    throw UnsupportedFunction(name);
}

CellValue evaluate_cell(const Workbook& workbook, const CellAddress& address, const Overrides& overrides) {
    return Evaluator(workbook, overrides).evaluate(address);
}

std::vector<std::string> supported_functions() {
    std::vector<std::string> names = {
        "ABS", "AND", "AVERAGE", "COUNT", "COUNTA", "IF", "IFERROR", "INDEX", "INT", "MATCH", "MAX", "MIN",
        "NOT", "OR", "PRODUCT", "ROUND", "ROUNDDOWN", "ROUNDUP", "SUM", "SUMPRODUCT", "VLOOKUP",
    };
    std::sort(names.begin(), names.end());
    return names;
}

std::vector<CachedValueMismatch> cross_check_cached_values(const Workbook& workbook, double tolerance) {
    std::vector<CachedValueMismatch> out;
    Evaluator evaluator(workbook);
    workbook.for_each_cell([&](const CellAddress& address, const CellContent& content) {
        if (!content.is_formula() || !content.formula().cached) return;
        const CellValue& cached = *content.formula().cached;
        try {
            CellValue computed = evaluator.evaluate(address);
            bool same = cached.is_number() && computed.is_number()
                            ? std::fabs(cached.as_number() - computed.as_number()) <= tolerance
                            : cached == computed;
            if (!same) out.push_back({address, cached, computed.to_string()});
        } catch (const Error& e) {
            out.push_back({address, cached, e.what()});
        }
    });
    return out;
}

}  // namespace cellcheck
