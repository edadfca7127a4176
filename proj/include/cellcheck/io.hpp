#pragma once

#include "cellcheck/rules.hpp"
#include "cellcheck/scenario.hpp"
#include "cellcheck/workbook.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cellcheck {

// Fixture format, one assignment per line:
//
//   # comment
//   sheet Inputs                 declares a worksheet (optional; first use also declares)
//   Inputs!A1=3.5                literal: number, TRUE/FALSE, error code, otherwise text
//   Inputs!B1==SUM(A1:A3)        formula: everything after the first "="
//
// Blank lines are ignored; LF and CRLF are both accepted.

/// Throws FormatError carrying the 1-based line number.
Workbook parse_fixture(std::string_view text);
Workbook load_fixture(const std::filesystem::path& path);
/// Emits every worksheet declaration followed by the cells in row-major order.
std::string write_fixture(const Workbook& workbook);

/// Reads the workbook, shared-strings and worksheet parts of an XLSX package.
/// Formulas that fail to parse become text literals of the raw formula and a
/// message is appended to `warnings`. Throws IoError or FormatError.
Workbook load_xlsx(const std::filesystem::path& path, std::vector<std::string>& warnings);
Workbook load_xlsx(const std::filesystem::path& path);
Workbook load_xlsx_bytes(std::string_view bytes, std::vector<std::string>& warnings);

/// Dispatches on the extension: ".xlsx" is read as XLSX, anything else as a fixture.
Workbook load_workbook(const std::filesystem::path& path, std::vector<std::string>& warnings);

/// `key = value` lines for the RuleConfig fields, plus `preset = config1|config2`
/// and `name = <text>`. Lists are comma-separated. Unset fields take
/// config1's values. Throws FormatError.
RuleConfig parse_config(std::string_view text);
RuleConfig load_config(const std::filesystem::path& path);

// Scenario format:
//
//   scenario <name>
//   input <cell> = <value>
//   expect <cell> = <number> [tol <number>] [label <text>]
//
// Cells are "B2", "Sheet1!B2" or "'My Sheet'!B2"; an unqualified cell
// refers to the first worksheet.

std::vector<TestScenario> parse_scenarios(std::string_view text);
std::vector<TestScenario> load_scenarios(const std::filesystem::path& path);

/// Whole file as bytes. Throws IoError.
std::string read_file(const std::filesystem::path& path);

/// Literal text in fixture/scenario files: number, TRUE/FALSE, error code or text.
CellValue parse_literal(std::string_view text);

}  // namespace cellcheck
