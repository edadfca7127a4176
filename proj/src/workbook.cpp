#include "cellcheck/workbook.hpp"

#include "cellcheck/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace cellcheck {

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::toupper(static_cast<unsigned char>(a[i])) != std::toupper(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

std::string to_upper(std::string_view text) {
    std::string out(text);
    for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return out;
}

std::string format_number(double value) {
    if (value == 0.0) return "0";
    char buf[64];
    auto result = std::to_chars(buf, buf + sizeof buf, value);
    std::string out(buf, result.ptr);
    for (char& ch : out) {
        if (ch == 'e') ch = 'E';
    }
    return out;
}

bool is_error_literal(std::string_view text) {
    static constexpr std::array<std::string_view, 7> kCodes = {
        "#NULL!", "#DIV/0!", "#VALUE!", "#REF!", "#NAME?", "#NUM!", "#N/A"};
    for (auto code : kCodes) {
        if (iequals(code, text)) return true;
    }
    return false;
}

CellValue::CellValue(Number n) : value_(std::move(n)) {
    if (!std::isfinite(std::get<Number>(value_).value)) {
        throw Error("non-finite number cannot be stored in a cell");
    }
}

CellValue CellValue::number(double value) {
    return CellValue(Number{value, format_number(value)});
}

std::optional<CellValue> CellValue::parse_number(std::string_view text) {
    std::size_t i = 0;
    auto digits = [&] {
        std::size_t begin = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        return i - begin;
    };
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    std::size_t mantissa = digits();
    if (i < text.size() && text[i] == '.') {
        ++i;
        mantissa += digits();
    }
    if (mantissa == 0) return std::nullopt;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
        if (digits() == 0) return std::nullopt;
    }
    if (i != text.size()) return std::nullopt;
    std::string owned(text);
    double value = std::strtod(owned.c_str(), nullptr);
    if (!std::isfinite(value)) return std::nullopt;
    return CellValue(Number{value, std::move(owned)});
}

std::string CellValue::to_string() const {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Number>) {
                return v.text.empty() ? format_number(v.value) : v.text;
            } else if constexpr (std::is_same_v<T, Text>) {
                return v.value;
            } else if constexpr (std::is_same_v<T, Boolean>) {
                return v.value ? "TRUE" : "FALSE";
            } else {
                return v.code;
            }
        },
        value_);
}

const CellContent* Worksheet::find(int column, int row) const {
    auto it = cells_.find(Key{row, column});
    return it == cells_.end() ? nullptr : &it->second;
}

std::optional<int> Workbook::sheet_index(std::string_view name) const {
    for (std::size_t i = 0; i < sheets_.size(); ++i) {
        if (iequals(sheets_[i].name(), name)) return static_cast<int>(i);
    }
    return std::nullopt;
}

const CellContent* Workbook::find(const CellAddress& address) const {
    if (address.sheet_index < 0 || static_cast<std::size_t>(address.sheet_index) >= sheets_.size()) {
        return nullptr;
    }
    return sheets_[static_cast<std::size_t>(address.sheet_index)].find(address.column, address.row);
}

void Workbook::for_each_cell(
    const std::function<void(const CellAddress&, const CellContent&)>& fn) const {
    for (std::size_t s = 0; s < sheets_.size(); ++s) {
        for (const auto& [key, content] : sheets_[s].cells()) {
            fn(CellAddress{static_cast<int>(s), key.column, key.row}, content);
        }
    }
}

std::string Workbook::describe(const CellAddress& address) const {
    std::string a1 = format_a1(address.column, address.row);
    if (address.sheet_index < 0 || static_cast<std::size_t>(address.sheet_index) >= sheets_.size()) {
        return a1;
    }
    return quote_sheet_name(sheets_[static_cast<std::size_t>(address.sheet_index)].name()) + "!" + a1;
}

int WorkbookBuilder::add_sheet(std::string name) {
    if (name.empty()) throw FormatError("worksheet name must not be empty");
    if (workbook_.sheet_index(name)) throw FormatError("duplicate worksheet name '" + name + "'");
    workbook_.sheets_.emplace_back(std::move(name));
    return static_cast<int>(workbook_.sheets_.size() - 1);
}

int WorkbookBuilder::ensure_sheet(std::string_view name) {
    if (auto index = workbook_.sheet_index(name)) return *index;
    return add_sheet(std::string(name));
}

void WorkbookBuilder::set_cell(const CellAddress& address, CellContent content) {
    if (address.sheet_index < 0 || static_cast<std::size_t>(address.sheet_index) >= workbook_.sheets_.size()) {
        throw FormatError("cell assigned to a worksheet that does not exist");
    }
    if (address.column < 0 || address.row < 0 || address.column >= kMaxColumns || address.row >= kMaxRows) {
        throw FormatError("cell address outside the grid");
    }
    auto& sheet = workbook_.sheets_[static_cast<std::size_t>(address.sheet_index)];
    auto key = Worksheet::Key{address.row, address.column};
    if (sheet.cells_.count(key) || assigned_.count(address)) {
        throw FormatError("duplicate assignment to " + workbook_.describe(address));
    }
    assigned_.insert(address);
    if (content.is_empty()) return;
    if (content.is_literal() && content.literal().is_text() && content.literal().as_text().empty()) return;
    sheet.cells_.emplace(key, std::move(content));
}

Workbook WorkbookBuilder::build() && {
    return std::move(workbook_);
}

std::size_t non_empty_cell_count(const Workbook& workbook) {
    std::size_t count = 0;
    for (const auto& sheet : workbook.worksheets()) count += sheet.size();
    return count;
}

std::size_t formula_count(const Workbook& workbook) {
    std::size_t count = 0;
    for (const auto& sheet : workbook.worksheets()) {
        for (const auto& [key, content] : sheet.cells()) {
            if (content.is_formula()) ++count;
        }
    }
    return count;
}

}  // namespace cellcheck
