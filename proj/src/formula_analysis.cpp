#include "cellcheck/errors.hpp"
#include "cellcheck/formula.hpp"

#include <algorithm>
#include <functional>
#include <type_traits>

namespace cellcheck {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using RefFormatter = std::function<std::string(const CellRef&)>;

std::string quote_text(const std::string& value) {
    std::string out = "\"";
    for (char ch : value) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

std::string sheet_prefix(const std::optional<std::string>& sheet) {
    return sheet ? quote_sheet_name(*sheet) + "!" : std::string();
}

std::string a1_text(const CellRef& ref) {
    std::string out;
    if (ref.col_absolute) out.push_back('$');
    out += column_letters(ref.column);
    if (ref.row_absolute) out.push_back('$');
    out += std::to_string(ref.row + 1);
    return out;
}

bool is_binary(const Expr& e) { return e.as<BinaryOp>() != nullptr; }

bool is_prefix_unary(const Expr& e) {
    const auto* u = e.as<UnaryOp>();
    return u && u->op != UnaryOperator::Percent;
}

class Writer {
public:
    explicit Writer(RefFormatter format_ref) : format_ref_(std::move(format_ref)) {}

    std::string write(const Expr& e) const {
        return std::visit(
            Overloaded{
                [](const NumberLiteral& n) { return n.text; },
                [](const TextLiteral& t) { return quote_text(t.value); },
                [](const BooleanLiteral& b) { return std::string(b.value ? "TRUE" : "FALSE"); },
                [this](const CellRef& r) { return sheet_prefix(r.sheet) + format_ref_(r); },
                [this](const RangeRef& r) {
                    return sheet_prefix(r.start.sheet) + format_ref_(r.start) + ":" + format_ref_(r.end);
                },
                [this](const FunctionCall& f) {
                    std::string out = f.name + "(";
                    for (std::size_t i = 0; i < f.args.size(); ++i) {
                        if (i) out.push_back(',');
                        out += write(f.args[i]);
                    }
                    return out + ")";
                },
                [this](const BinaryOp& b) {
                    int p = precedence(b.op);
                    std::string left = write(*b.left);
                    std::string right = write(*b.right);
                    if (is_binary(*b.left) && precedence(b.left->as<BinaryOp>()->op) < p) left = "(" + left + ")";
                    if (is_binary(*b.right) && precedence(b.right->as<BinaryOp>()->op) <= p) right = "(" + right + ")";
                    return left + std::string(operator_symbol(b.op)) + right;
                },
                [this](const UnaryOp& u) {
                    std::string operand = write(*u.operand);
                    if (u.op == UnaryOperator::Percent) {
                        if (is_binary(*u.operand) || is_prefix_unary(*u.operand)) operand = "(" + operand + ")";
                        return operand + "%";
                    }
                    if (is_binary(*u.operand)) operand = "(" + operand + ")";
                    return std::string(operator_symbol(u.op)) + operand;
                },
                [this](const Paren& p) { return "(" + write(*p.inner) + ")"; },
            },
            e.node);
    }

private:
    RefFormatter format_ref_;
};

template <class Fn>
void for_each_child(const Expr& e, Fn&& fn) {
    if (const auto* f = e.as<FunctionCall>()) {
        for (const auto& arg : f->args) fn(arg);
    } else if (const auto* b = e.as<BinaryOp>()) {
        fn(*b->left);
        fn(*b->right);
    } else if (const auto* u = e.as<UnaryOp>()) {
        fn(*u->operand);
    } else if (const auto* p = e.as<Paren>()) {
        fn(*p->inner);
    }
}

bool is_operation(const Expr& e) {
    return e.as<BinaryOp>() || e.as<UnaryOp>() || e.as<FunctionCall>();
}

std::string literal_text(const Expr& e) {
    if (const auto* n = e.as<NumberLiteral>()) return n->text;
    if (const auto* t = e.as<TextLiteral>()) return quote_text(t->value);
    return e.as<BooleanLiteral>()->value ? "TRUE" : "FALSE";
}

void collect_constants(const Expr& e, const std::optional<std::string>& enclosing, std::vector<ConstantUse>& out) {
    if (e.as<NumberLiteral>() || e.as<TextLiteral>() || e.as<BooleanLiteral>()) {
        out.push_back({literal_text(e), enclosing});
        return;
    }
    if (const auto* f = e.as<FunctionCall>()) {
        std::optional<std::string> name = f->name;
        for (const auto& arg : f->args) collect_constants(arg, name, out);
        return;
    }
    for_each_child(e, [&](const Expr& child) { collect_constants(child, enclosing, out); });
}

std::string offset_text(char axis, int value, bool absolute, int origin) {
    if (absolute) return std::string(1, axis) + std::to_string(value + 1);
    return std::string(1, axis) + "[" + std::to_string(value - origin) + "]";
}

CellRef shifted(CellRef ref, int columns, int rows) {
    if (!ref.col_absolute) ref.column += columns;
    if (!ref.row_absolute) ref.row += rows;
    if (ref.column < 0 || ref.row < 0 || ref.column >= kMaxColumns || ref.row >= kMaxRows) {
        throw Error("translated reference leaves the worksheet grid");
    }
    return ref;
}

}  // namespace

std::string serialize(const Expr& ast) {
    return "=" + Writer(a1_text).write(ast);
}

Expr strip_parens(const Expr& ast) {
    return std::visit(
        Overloaded{
            [](const Paren& p) { return strip_parens(*p.inner); },
            [](const FunctionCall& f) {
                std::vector<Expr> args;
                args.reserve(f.args.size());
                for (const auto& arg : f.args) args.push_back(strip_parens(arg));
                return Expr{FunctionCall{f.name, std::move(args)}};
            },
            [](const BinaryOp& b) { return binary(b.op, strip_parens(*b.left), strip_parens(*b.right)); },
            [](const UnaryOp& u) { return unary(u.op, strip_parens(*u.operand)); },
            [&ast](const auto&) { return ast; },
        },
        ast.node);
}

namespace {

std::vector<ResolvedReference> collect_references(const Expr& ast, const CellAddress& origin,
                                                  const Workbook& workbook, std::vector<std::string>* unresolved) {
    std::vector<ResolvedReference> out;
    auto sheet_of = [&](const std::optional<std::string>& qualifier) -> std::optional<int> {
        if (!qualifier) return origin.sheet_index;
        auto index = workbook.sheet_index(*qualifier);
        if (!index) {
            if (!unresolved) throw UnknownSheet(*qualifier);
            unresolved->push_back(*qualifier);
        }
        return index;
    };
    std::function<void(const Expr&)> walk = [&](const Expr& e) {
        if (const auto* r = e.as<CellRef>()) {
            if (auto sheet = sheet_of(r->sheet)) {
                CellAddress target{*sheet, r->column, r->row};
                out.push_back({target, target, origin});
            }
        } else if (const auto* rr = e.as<RangeRef>()) {
            if (auto sheet = sheet_of(rr->start.sheet)) {
                CellAddress first{*sheet, std::min(rr->start.column, rr->end.column),
                                  std::min(rr->start.row, rr->end.row)};
                CellAddress last{*sheet, std::max(rr->start.column, rr->end.column),
                                 std::max(rr->start.row, rr->end.row)};
                out.push_back({first, last, origin});
            }
        } else {
            for_each_child(e, walk);
        }
    };
    walk(ast);
    return out;
}

}  // namespace

std::vector<ResolvedReference> referenced_cells(const Expr& ast, const CellAddress& origin,
                                                const Workbook& workbook) {
    return collect_references(ast, origin, workbook, nullptr);
}

std::vector<ResolvedReference> referenced_cells(const Expr& ast, const CellAddress& origin,
                                                const Workbook& workbook, std::vector<std::string>& unresolved) {
    return collect_references(ast, origin, workbook, &unresolved);
}

std::vector<ConstantUse> constants_in(const Expr& ast) {
    std::vector<ConstantUse> out;
    collect_constants(ast, std::nullopt, out);
    return out;
}

std::size_t operation_count(const Expr& ast) {
    std::size_t count = is_operation(ast) ? 1 : 0;
    for_each_child(ast, [&](const Expr& child) { count += operation_count(child); });
    return count;
}

std::size_t max_nesting_depth(const Expr& ast) {
    std::size_t deepest = 0;
    for_each_child(ast, [&](const Expr& child) { deepest = std::max(deepest, max_nesting_depth(child)); });
    return deepest + (is_operation(ast) ? 1 : 0);
}

std::string normalize_r1c1(const Expr& ast, const CellAddress& origin) {
    auto format = [&origin](const CellRef& ref) {
        return offset_text('R', ref.row, ref.row_absolute, origin.row) +
               offset_text('C', ref.column, ref.col_absolute, origin.column);
    };
    // Sheet names compare case-insensitively, so fold them for the signature.
    std::function<Expr(const Expr&)> fold = [&](const Expr& e) -> Expr {
        return std::visit(
            Overloaded{
                [](const CellRef& r) {
                    CellRef copy = r;
                    if (copy.sheet) copy.sheet = to_upper(*copy.sheet);
                    return Expr{copy};
                },
                [](const RangeRef& r) {
                    RangeRef copy = r;
                    if (copy.start.sheet) copy.start.sheet = copy.end.sheet = to_upper(*copy.start.sheet);
                    return Expr{copy};
                },
                [&](const FunctionCall& f) {
                    std::vector<Expr> args;
                    for (const auto& arg : f.args) args.push_back(fold(arg));
                    return Expr{FunctionCall{f.name, std::move(args)}};
                },
                [&](const BinaryOp& b) { return binary(b.op, fold(*b.left), fold(*b.right)); },
                [&](const UnaryOp& u) { return unary(u.op, fold(*u.operand)); },
                [&](const Paren& p) { return paren(fold(*p.inner)); },
                [&e](const auto&) { return e; },
            },
            e.node);
    };
    return "=" + Writer(format).write(fold(ast));
}

Expr translate(const Expr& ast, int columns, int rows) {
    return std::visit(
        Overloaded{
            [&](const CellRef& r) { return Expr{shifted(r, columns, rows)}; },
            [&](const RangeRef& r) {
                return Expr{RangeRef{shifted(r.start, columns, rows), shifted(r.end, columns, rows)}};
            },
            [&](const FunctionCall& f) {
                std::vector<Expr> args;
                for (const auto& arg : f.args) args.push_back(translate(arg, columns, rows));
                return Expr{FunctionCall{f.name, std::move(args)}};
            },
            [&](const BinaryOp& b) {
                return binary(b.op, translate(*b.left, columns, rows), translate(*b.right, columns, rows));
            },
            [&](const UnaryOp& u) { return unary(u.op, translate(*u.operand, columns, rows)); },
            [&](const Paren& p) { return paren(translate(*p.inner, columns, rows)); },
            [&ast](const auto&) { return ast; },
        },
        ast.node);
}

}  // namespace cellcheck
