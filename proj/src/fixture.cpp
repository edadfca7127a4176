#include "cellcheck/errors.hpp"
#include "cellcheck/formula.hpp"
#include "cellcheck/io.hpp"

#include <fstream>
#include <sstream>

namespace cellcheck {

namespace {

std::string_view trim(std::string_view text) {
    auto begin = text.find_first_not_of(" \t");
    if (begin == std::string_view::npos) return {};
    auto end = text.find_last_not_of(" \t");
    return text.substr(begin, end - begin + 1);
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path.string());
    return buffer.str();
}

CellValue parse_literal(std::string_view text) {
    if (auto number = CellValue::parse_number(text)) return *number;
    if (iequals(text, "TRUE")) return CellValue::boolean(true);
    if (iequals(text, "FALSE")) return CellValue::boolean(false);
    if (is_error_literal(text)) return CellValue::error(to_upper(text));
    return CellValue::text(std::string(text));
}

Workbook parse_fixture(std::string_view text) {
    WorkbookBuilder builder;
    std::size_t line_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto newline = text.find('\n', pos);
        std::string_view line = text.substr(pos, newline == std::string_view::npos ? std::string_view::npos : newline - pos);
        pos = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        if (stripped.substr(0, 6) == "sheet " || stripped.substr(0, 6) == "sheet\t") {
            auto name = trim(stripped.substr(6));
            try {
                builder.add_sheet(std::string(name));
            } catch (const FormatError& e) {
                throw FormatError(e.what(), line_number);
            }
            continue;
        }

        auto eq = stripped.find('=');
        if (eq == std::string_view::npos) throw FormatError("expected <Sheet>!<cell>=<value>", line_number);
        auto target = parse_sheet_cell(trim(stripped.substr(0, eq)));
        if (!target || target->sheet.empty()) {
            throw FormatError("malformed cell address '" + std::string(trim(stripped.substr(0, eq))) + "'",
                              line_number);
        }
        // Keep the value exactly as written after "=", minus line-end whitespace.
        std::string_view value = line.substr(line.find('=') + 1);
        auto last = value.find_last_not_of(" \t");
        value = last == std::string_view::npos ? std::string_view{} : value.substr(0, last + 1);

        try {
            CellAddress address{builder.ensure_sheet(target->sheet), target->column, target->row};
            if (!value.empty() && value.front() == '=') {
                std::string source(trim(value));
                Expr ast = parse_formula(source);
                builder.set_cell(address, Formula{std::move(source), std::move(ast), std::nullopt});
            } else if (value.empty()) {
                builder.set_cell(address, CellContent{});
            } else {
                builder.set_cell(address, parse_literal(value));
            }
        } catch (const ParseError& e) {
            throw FormatError("formula: " + std::string(e.what()), line_number);
        } catch (const FormatError& e) {
            throw FormatError(e.what(), line_number);
        }
    }
    return std::move(builder).build();
}

Workbook load_fixture(const std::filesystem::path& path) {
    return parse_fixture(read_file(path));
}

std::string write_fixture(const Workbook& workbook) {
    std::string out;
    for (const auto& sheet : workbook.worksheets()) out += "sheet " + sheet.name() + "\n";
    workbook.for_each_cell([&](const CellAddress& address, const CellContent& content) {
        out += workbook.describe(address) + "=";
        if (content.is_formula()) {
            out += content.formula().source;
        } else {
            out += content.literal().to_string();
        }
        out += "\n";
    });
    return out;
}

}  // namespace cellcheck
