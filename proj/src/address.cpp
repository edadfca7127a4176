#include "cellcheck/address.hpp"

#include <algorithm>
#include <cctype>

namespace cellcheck {

std::optional<int> column_from_letters(std::string_view letters) {
    if (letters.empty() || letters.size() > 3) return std::nullopt;
    int value = 0;
    for (char ch : letters) {
        if (!std::isalpha(static_cast<unsigned char>(ch))) return std::nullopt;
        value = value * 26 + (std::toupper(static_cast<unsigned char>(ch)) - 'A' + 1);
    }
    if (value > kMaxColumns) return std::nullopt;
    return value - 1;
}

std::string column_letters(int column) {
    std::string out;
    int n = column + 1;
    while (n > 0) {
        int rem = (n - 1) % 26;
        out.push_back(static_cast<char>('A' + rem));
        n = (n - 1) / 26;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::optional<A1Components> parse_a1(std::string_view text) {
    A1Components out;
    std::size_t i = 0;
    if (i < text.size() && text[i] == '$') {
        out.col_absolute = true;
        ++i;
    }
    std::size_t letters_begin = i;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
    auto column = column_from_letters(text.substr(letters_begin, i - letters_begin));
    if (!column) return std::nullopt;
    if (i < text.size() && text[i] == '$') {
        out.row_absolute = true;
        ++i;
    }
    std::size_t digits_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i != text.size() || digits_begin == i || i - digits_begin > 7) return std::nullopt;
    if (text[digits_begin] == '0') return std::nullopt;
    long row = std::stol(std::string(text.substr(digits_begin)));
    if (row > kMaxRows) return std::nullopt;
    out.column = *column;
    out.row = static_cast<int>(row - 1);
    return out;
}

std::string format_a1(int column, int row) {
    return column_letters(column) + std::to_string(row + 1);
}

bool sheet_name_needs_quotes(std::string_view name) {
    if (name.empty()) return true;
    auto c0 = static_cast<unsigned char>(name.front());
    if (!std::isalpha(c0) && c0 != '_') return true;
    for (char ch : name) {
        auto c = static_cast<unsigned char>(ch);
        if (!std::isalnum(c) && c != '_' && c != '.') return true;
    }
    // Names such as "AB12" or "TRUE" would read back as something else.
    if (parse_a1(name)) return true;
    std::string upper(name);
    for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return upper == "TRUE" || upper == "FALSE";
}

std::string quote_sheet_name(std::string_view name) {
    if (!sheet_name_needs_quotes(name)) return std::string(name);
    std::string out = "'";
    for (char ch : name) {
        if (ch == '\'') out.push_back('\'');
        out.push_back(ch);
    }
    out.push_back('\'');
    return out;
}

std::optional<SheetCell> parse_sheet_cell(std::string_view text) {
    SheetCell out;
    std::string_view cell_part = text;
    if (!text.empty() && text.front() == '\'') {
        std::string name;
        std::size_t i = 1;
        bool closed = false;
        while (i < text.size()) {
            if (text[i] == '\'') {
                if (i + 1 < text.size() && text[i + 1] == '\'') {
                    name.push_back('\'');
                    i += 2;
                    continue;
                }
                closed = true;
                ++i;
                break;
            }
            name.push_back(text[i++]);
        }
        if (!closed || i >= text.size() || text[i] != '!') return std::nullopt;
        out.sheet = std::move(name);
        cell_part = text.substr(i + 1);
    } else if (auto bang = text.rfind('!'); bang != std::string_view::npos) {
        out.sheet = std::string(text.substr(0, bang));
        if (out.sheet.empty()) return std::nullopt;
        cell_part = text.substr(bang + 1);
    }
    auto a1 = parse_a1(cell_part);
    if (!a1) return std::nullopt;
    out.column = a1->column;
    out.row = a1->row;
    return out;
}

std::string format_sheet_cell(const SheetCell& cell) {
    std::string a1 = format_a1(cell.column, cell.row);
    if (cell.sheet.empty()) return a1;
    return quote_sheet_name(cell.sheet) + "!" + a1;
}

}  // namespace cellcheck
