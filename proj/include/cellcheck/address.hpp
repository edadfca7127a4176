#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cellcheck {

inline constexpr int kMaxColumns = 16384;   // A..XFD
inline constexpr int kMaxRows = 1048576;

/// Position of a cell inside a workbook. All components are 0-based.
/// Ordering is sheet, then row, then column (row-major reading order).
struct CellAddress {
    int sheet_index = 0;
    int column = 0;
    int row = 0;

    friend bool operator==(const CellAddress&, const CellAddress&) = default;
    friend std::strong_ordering operator<=>(const CellAddress& a, const CellAddress& b) {
        if (auto c = a.sheet_index <=> b.sheet_index; c != 0) return c;
        if (auto c = a.row <=> b.row; c != 0) return c;
        return a.column <=> b.column;
    }
};

/// "A" -> 0, "Z" -> 25, "AA" -> 26. Empty optional on anything else.
std::optional<int> column_from_letters(std::string_view letters);
std::string column_letters(int column);

struct A1Components {
    int column = 0;
    int row = 0;
    bool col_absolute = false;
    bool row_absolute = false;
};

/// Parses "B4", "$B$4", "b$4". Case-insensitive. Rejects out-of-grid positions.
std::optional<A1Components> parse_a1(std::string_view text);
std::string format_a1(int column, int row);

/// A cell named by worksheet name rather than ordinal, as written in scenario
/// and reference files. An empty sheet name means "first worksheet".
struct SheetCell {
    std::string sheet;
    int column = 0;
    int row = 0;

    friend bool operator==(const SheetCell&, const SheetCell&) = default;
    friend auto operator<=>(const SheetCell&, const SheetCell&) = default;
};

/// Parses "B2", "Sheet1!B2" or "'My Sheet'!B2".
std::optional<SheetCell> parse_sheet_cell(std::string_view text);
std::string format_sheet_cell(const SheetCell& cell);

/// Sheet names that are not plain identifiers need quoting in references.
bool sheet_name_needs_quotes(std::string_view name);
std::string quote_sheet_name(std::string_view name);

}  // namespace cellcheck
