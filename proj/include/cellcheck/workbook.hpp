#pragma once

#include "cellcheck/address.hpp"
#include "cellcheck/formula_ast.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cellcheck {

struct Number {
    double value = 0.0;
    std::string text;  // decimal text as stored in the source document
    friend bool operator==(const Number& a, const Number& b) { return a.value == b.value; }
};

struct Text {
    std::string value;
    friend bool operator==(const Text&, const Text&) = default;
};

struct Boolean {
    bool value = false;
    friend bool operator==(const Boolean&, const Boolean&) = default;
};

struct ErrorCode {
    std::string code;  // "#DIV/0!", "#N/A", ...
    friend bool operator==(const ErrorCode&, const ErrorCode&) = default;
};

/// Scalar cell value. Numbers are always finite.
class CellValue {
public:
    using Variant = std::variant<Number, Text, Boolean, ErrorCode>;

    CellValue() : value_(Number{0.0, "0"}) {}
    CellValue(Number n);   // NOLINT(implicit)
    CellValue(Text t) : value_(std::move(t)) {}          // NOLINT(implicit)
    CellValue(Boolean b) : value_(b) {}                  // NOLINT(implicit)
    CellValue(ErrorCode e) : value_(std::move(e)) {}     // NOLINT(implicit)

    /// Number from a double; the decimal text is the shortest exact rendering.
    static CellValue number(double value);
    /// Number from decimal text ("2.75", "-1E3"). Empty optional if the text
    /// is not a plain decimal.
    static std::optional<CellValue> parse_number(std::string_view text);
    static CellValue text(std::string value) { return CellValue(Text{std::move(value)}); }
    static CellValue boolean(bool value) { return CellValue(Boolean{value}); }
    static CellValue error(std::string code) { return CellValue(ErrorCode{std::move(code)}); }

    bool is_number() const { return std::holds_alternative<Number>(value_); }
    bool is_text() const { return std::holds_alternative<Text>(value_); }
    bool is_boolean() const { return std::holds_alternative<Boolean>(value_); }
    bool is_error() const { return std::holds_alternative<ErrorCode>(value_); }

    double as_number() const { return std::get<Number>(value_).value; }
    const std::string& as_text() const { return std::get<Text>(value_).value; }
    bool as_boolean() const { return std::get<Boolean>(value_).value; }
    const std::string& as_error() const { return std::get<ErrorCode>(value_).code; }

    const Variant& variant() const { return value_; }

    /// Human-readable rendering: number text, raw text, TRUE/FALSE, error code.
    std::string to_string() const;

    friend bool operator==(const CellValue&, const CellValue&) = default;

private:
    Variant value_;
};

/// Shortest decimal text that round-trips `value` ("2.8", "0.1", "1E+20").
std::string format_number(double value);

/// Known spreadsheet error literals ("#DIV/0!", "#N/A", ...).
bool is_error_literal(std::string_view text);

struct Formula {
    std::string source;                 // begins with "="
    Expr ast;
    std::optional<CellValue> cached;    // last computed value stored in the file, if any
};

/// Content of one cell. Empty cells are never stored in a worksheet.
class CellContent {
public:
    CellContent() = default;
    CellContent(CellValue literal) : content_(std::move(literal)) {}            // NOLINT(implicit)
    CellContent(Formula formula)                                               // NOLINT(implicit)
        : content_(std::make_shared<const Formula>(std::move(formula))) {}

    bool is_empty() const { return std::holds_alternative<std::monostate>(content_); }
    bool is_literal() const { return std::holds_alternative<CellValue>(content_); }
    bool is_formula() const { return std::holds_alternative<std::shared_ptr<const Formula>>(content_); }

    const CellValue& literal() const { return std::get<CellValue>(content_); }
    const Formula& formula() const { return *std::get<std::shared_ptr<const Formula>>(content_); }

private:
    std::variant<std::monostate, CellValue, std::shared_ptr<const Formula>> content_;
};

class Worksheet {
public:
    struct Key {
        int row;
        int column;
        friend auto operator<=>(const Key&, const Key&) = default;
    };
    using CellMap = std::map<Key, CellContent>;

    explicit Worksheet(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    /// Cells in row-major order.
    const CellMap& cells() const { return cells_; }
    const CellContent* find(int column, int row) const;
    std::size_t size() const { return cells_.size(); }

private:
    friend class WorkbookBuilder;
    std::string name_;
    CellMap cells_;
};

/// Immutable loaded spreadsheet. Build with WorkbookBuilder.
class Workbook {
public:
    Workbook() = default;

    const std::vector<Worksheet>& worksheets() const { return sheets_; }
    std::size_t sheet_count() const { return sheets_.size(); }
    const Worksheet& sheet(int index) const { return sheets_.at(static_cast<std::size_t>(index)); }

    /// Case-insensitive lookup of a worksheet ordinal by name.
    std::optional<int> sheet_index(std::string_view name) const;

    /// nullptr when no cell is stored at `address`.
    const CellContent* find(const CellAddress& address) const;

    /// Visits every stored cell in (sheet, row, column) order.
    void for_each_cell(const std::function<void(const CellAddress&, const CellContent&)>& fn) const;

    /// Sheet-qualified A1 text, e.g. "Sheet1!B2".
    std::string describe(const CellAddress& address) const;

private:
    friend class WorkbookBuilder;
    std::vector<Worksheet> sheets_;
};

class WorkbookBuilder {
public:
    /// Appends a worksheet; throws FormatError on a case-insensitive duplicate.
    int add_sheet(std::string name);
    /// Returns the existing index or appends a new sheet.
    int ensure_sheet(std::string_view name);
    std::optional<int> sheet_index(std::string_view name) const { return workbook_.sheet_index(name); }

    /// Stores content at `address`. Empty content and empty-text literals are
    /// dropped. Throws FormatError if the cell was already assigned.
    void set_cell(const CellAddress& address, CellContent content);

    Workbook build() &&;

private:
    Workbook workbook_;
    std::set<CellAddress> assigned_;
};

std::size_t non_empty_cell_count(const Workbook& workbook);
std::size_t formula_count(const Workbook& workbook);

bool iequals(std::string_view a, std::string_view b);
std::string to_upper(std::string_view text);

}  // namespace cellcheck
