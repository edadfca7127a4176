#include "cellcheck/errors.hpp"
#include "cellcheck/io.hpp"

namespace cellcheck {

namespace {

std::string_view trim(std::string_view text) {
    auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

bool starts_with_word(std::string_view line, std::string_view word) {
    return line.size() > word.size() && line.substr(0, word.size()) == word &&
           (line[word.size()] == ' ' || line[word.size()] == '\t');
}

std::vector<std::string_view> split_words(std::string_view text) {
    std::vector<std::string_view> words;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto begin = text.find_first_not_of(" \t", pos);
        if (begin == std::string_view::npos) break;
        auto end = text.find_first_of(" \t", begin);
        if (end == std::string_view::npos) end = text.size();
        words.push_back(text.substr(begin, end - begin));
        pos = end;
    }
    return words;
}

SheetCell parse_cell(std::string_view text, std::size_t line) {
    auto cell = parse_sheet_cell(trim(text));
    if (!cell) throw FormatError("malformed cell '" + std::string(trim(text)) + "'", line);
    return *cell;
}

double parse_decimal(std::string_view text, std::size_t line) {
    auto value = CellValue::parse_number(text);
    if (!value) throw FormatError("expected a number, got '" + std::string(text) + "'", line);
    return value->as_number();
}

}  // namespace

std::vector<TestScenario> parse_scenarios(std::string_view text) {
    std::vector<TestScenario> scenarios;
    std::size_t line_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto newline = text.find('\n', pos);
        auto line = trim(text.substr(pos, newline == std::string_view::npos ? std::string_view::npos : newline - pos));
        pos = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
        ++line_number;
        if (line.empty() || line.front() == '#') continue;

        if (starts_with_word(line, "scenario")) {
            TestScenario scenario;
            scenario.name = std::string(trim(line.substr(8)));
            scenarios.push_back(std::move(scenario));
            continue;
        }
        bool is_input = starts_with_word(line, "input");
        bool is_expect = starts_with_word(line, "expect");
        if (!is_input && !is_expect) throw FormatError("expected scenario, input or expect", line_number);
        if (scenarios.empty()) throw FormatError("input/expect before the first scenario line", line_number);
        auto body = trim(line.substr(is_input ? 5 : 6));
        auto eq = body.find('=');
        if (eq == std::string_view::npos) throw FormatError("expected <cell> = <value>", line_number);
        SheetCell cell = parse_cell(body.substr(0, eq), line_number);
        auto rest = trim(body.substr(eq + 1));
        TestScenario& scenario = scenarios.back();

        if (is_input) {
            if (rest.empty()) throw FormatError("missing input value", line_number);
            if (!scenario.inputs.emplace(cell, parse_literal(rest)).second) {
                throw FormatError("repeated input " + format_sheet_cell(cell), line_number);
            }
            continue;
        }

        Expectation expectation;
        expectation.cell = cell;
        auto label_at = rest.find(" label ");
        if (label_at != std::string_view::npos) {
            expectation.label = std::string(trim(rest.substr(label_at + 7)));
            rest = trim(rest.substr(0, label_at));
        }
        auto words = split_words(rest);
        if (words.empty()) throw FormatError("missing expected value", line_number);
        expectation.expected = parse_decimal(words[0], line_number);
        if (words.size() == 3 && words[1] == "tol") {
            expectation.tolerance = parse_decimal(words[2], line_number);
        } else if (words.size() != 1) {
            throw FormatError("expected '<number> [tol <number>] [label <text>]'", line_number);
        }
        scenario.expectations.push_back(std::move(expectation));
        try {
            scenario.validate();
        } catch (const FormatError& e) {
            throw FormatError(e.what(), line_number);
        }
    }
    return scenarios;
}

std::vector<TestScenario> load_scenarios(const std::filesystem::path& path) {
    try {
        return parse_scenarios(read_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace cellcheck
