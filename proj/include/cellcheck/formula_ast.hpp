#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cellcheck {

/// Owning pointer with value semantics: copies deep-copy the pointee and
/// equality compares pointees.
template <class T>
class Box {
public:
    Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(implicit)
    Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
    Box(Box&&) noexcept = default;
    Box& operator=(const Box& other) {
        if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
        return *this;
    }
    Box& operator=(Box&&) noexcept = default;
    ~Box() = default;

    const T& operator*() const { return *ptr_; }
    T& operator*() { return *ptr_; }
    const T* operator->() const { return ptr_.get(); }
    T* operator->() { return ptr_.get(); }

    friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

private:
    std::unique_ptr<T> ptr_;
};

struct Expr;

/// Numeric constant. `text` is the literal exactly as written.
struct NumberLiteral {
    std::string text;
    double value = 0.0;
    friend bool operator==(const NumberLiteral& a, const NumberLiteral& b) { return a.text == b.text; }
};

struct TextLiteral {
    std::string value;
    friend bool operator==(const TextLiteral&, const TextLiteral&) = default;
};

struct BooleanLiteral {
    bool value = false;
    friend bool operator==(const BooleanLiteral&, const BooleanLiteral&) = default;
};

/// A1-style reference. column/row are 0-based.
struct CellRef {
    std::optional<std::string> sheet;
    int column = 0;
    int row = 0;
    bool col_absolute = false;
    bool row_absolute = false;
    friend bool operator==(const CellRef&, const CellRef&) = default;
};

/// Rectangular range. The sheet qualifier lives on `start`; `end.sheet` is
/// always equal to it.
struct RangeRef {
    CellRef start;
    CellRef end;
    friend bool operator==(const RangeRef&, const RangeRef&) = default;
};

struct FunctionCall {
    std::string name;  // uppercase
    std::vector<Expr> args;
    friend bool operator==(const FunctionCall& a, const FunctionCall& b);
};

enum class BinaryOperator {
    Add, Subtract, Multiply, Divide, Power, Concat,
    Equal, NotEqual, Less, LessEqual, Greater, GreaterEqual,
};

enum class UnaryOperator { Negate, Plus, Percent };

struct BinaryOp {
    BinaryOperator op;
    Box<Expr> left;
    Box<Expr> right;
    friend bool operator==(const BinaryOp&, const BinaryOp&) = default;
};

struct UnaryOp {
    UnaryOperator op;
    Box<Expr> operand;
    friend bool operator==(const UnaryOp&, const UnaryOp&) = default;
};

struct Paren {
    Box<Expr> inner;
    friend bool operator==(const Paren&, const Paren&) = default;
};

using ExprNode = std::variant<NumberLiteral, TextLiteral, BooleanLiteral, CellRef, RangeRef,
                              FunctionCall, BinaryOp, UnaryOp, Paren>;

/// Parsed formula expression tree (without the leading "=").
struct Expr {
    ExprNode node;

    template <class T>
    const T* as() const { return std::get_if<T>(&node); }

    friend bool operator==(const Expr&, const Expr&) = default;
};

inline bool operator==(const FunctionCall& a, const FunctionCall& b) {
    return a.name == b.name && a.args == b.args;
}

std::string_view operator_symbol(BinaryOperator op);
std::string_view operator_symbol(UnaryOperator op);

/// Binding strength, higher binds tighter. Comparison 1, "&" 2, "+ -" 3,
/// "* /" 4, "^" 5, prefix unary 6, postfix "%" 7.
int precedence(BinaryOperator op);

// Convenience constructors, mostly for tests and generators.
Expr number(std::string text);
Expr text(std::string value);
Expr boolean(bool value);
Expr cell(int column, int row, bool col_absolute = false, bool row_absolute = false,
          std::optional<std::string> sheet = std::nullopt);
Expr range(CellRef start, CellRef end);
Expr call(std::string name, std::vector<Expr> args);
Expr binary(BinaryOperator op, Expr left, Expr right);
Expr unary(UnaryOperator op, Expr operand);
Expr paren(Expr inner);

}  // namespace cellcheck
