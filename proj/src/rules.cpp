#include "cellcheck/rules.hpp"

#include "cellcheck/errors.hpp"
#include "cellcheck/formula.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <utility>

namespace cellcheck {

std::string_view rule_id_name(RuleId rule) {
    switch (rule) {
        case RuleId::Constants: return "CONSTANTS";
        case RuleId::Complexity: return "COMPLEXITY";
        case RuleId::ReadingDirection: return "READING_DIRECTION";
    }
    return "?";
}

std::string_view rule_title(RuleId rule) {
    switch (rule) {
        case RuleId::Constants: return "No Constants In Formulae";
        case RuleId::Complexity: return "Formula Complexity";
        case RuleId::ReadingDirection: return "Reading direction";
    }
    return "?";
}

RuleConfig RuleConfig::config1() {
    RuleConfig config;
    config.name = "config1";
    config.complexity_max_operations = 5;
    config.complexity_max_nesting = 2;
    return config;
}

RuleConfig RuleConfig::config2() {
    RuleConfig config;
    config.name = "config2";
    config.constants_ignored_values = {"1"};
    config.constants_ignored_functions = {"INDEX"};
    config.complexity_max_operations = 2;
    config.complexity_max_nesting = 2;
    return config;
}

std::optional<RuleConfig> RuleConfig::preset(std::string_view name) {
    if (iequals(name, "config1")) return config1();
    if (iequals(name, "config2")) return config2();
    return std::nullopt;
}

void RuleConfig::validate() const {
    if (complexity_max_operations < 1) throw Error("complexity_max_operations must be at least 1");
    if (complexity_max_nesting < 1) throw Error("complexity_max_nesting must be at least 1");
}

bool RuleConfig::same_settings(const RuleConfig& other) const {
    return constants_ignored_values == other.constants_ignored_values &&
           constants_ignored_functions == other.constants_ignored_functions &&
           complexity_max_operations == other.complexity_max_operations &&
           complexity_max_nesting == other.complexity_max_nesting &&
           direction_check_right_below == other.direction_check_right_below &&
           direction_check_sheet_order == other.direction_check_sheet_order;
}

std::vector<Violation> InspectionReport::violations_of(RuleId rule) const {
    std::vector<Violation> out;
    std::copy_if(violations.begin(), violations.end(), std::back_inserter(out),
                 [rule](const Violation& v) { return v.rule == rule; });
    return out;
}

namespace {

using FormulaCheck = std::function<std::optional<std::string>(const CellAddress&, const Formula&)>;

std::vector<Violation> check_each_formula(const Workbook& workbook, RuleId rule, const FormulaCheck& check) {
    std::vector<Violation> out;
    workbook.for_each_cell([&](const CellAddress& address, const CellContent& content) {
        if (!content.is_formula()) return;
        if (auto detail = check(address, content.formula())) out.push_back({rule, address, std::move(*detail)});
    });
    return out;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ", ";
        out += parts[i];
    }
    return out;
}

}  // namespace

std::vector<Violation> check_constants(const Workbook& workbook, const RuleConfig& config) {
    return check_each_formula(workbook, RuleId::Constants,
                              [&](const CellAddress&, const Formula& formula) -> std::optional<std::string> {
        std::vector<std::string> offending;
        for (const auto& use : constants_in(formula.ast)) {
            if (config.constants_ignored_values.count(use.text)) continue;
            if (use.enclosing_function && config.constants_ignored_functions.count(*use.enclosing_function)) continue;
            offending.push_back(use.text);
        }
        if (offending.empty()) return std::nullopt;
        return "constants: " + join(offending);
    });
}

std::vector<Violation> check_complexity(const Workbook& workbook, const RuleConfig& config) {
    return check_each_formula(workbook, RuleId::Complexity,
                              [&](const CellAddress&, const Formula& formula) -> std::optional<std::string> {
        auto operations = operation_count(formula.ast);
        auto nesting = max_nesting_depth(formula.ast);
        if (operations <= static_cast<std::size_t>(config.complexity_max_operations) &&
            nesting <= static_cast<std::size_t>(config.complexity_max_nesting)) {
            return std::nullopt;
        }
        return "operations=" + std::to_string(operations) + " nesting=" + std::to_string(nesting);
    });
}

std::vector<Violation> check_reading_direction(const Workbook& workbook, const RuleConfig& config) {
    return check_each_formula(workbook, RuleId::ReadingDirection,
                              [&](const CellAddress& origin, const Formula& formula) -> std::optional<std::string> {
        std::vector<std::string> unresolved;
        std::vector<std::string> offending;
        for (const auto& ref : referenced_cells(formula.ast, origin, workbook, unresolved)) {
            bool violates = false;
            if (ref.first.sheet_index == origin.sheet_index) {
                // A range violates when any of its cells does; the origin
                // itself is not "left and above".
                bool right = ref.last.column > origin.column;
                bool below = ref.last.row > origin.row;
                bool covers_origin = ref.first.column <= origin.column && origin.column <= ref.last.column &&
                                     ref.first.row <= origin.row && origin.row <= ref.last.row;
                violates = config.direction_check_right_below && (right || below || covers_origin);
            } else if (ref.first.sheet_index > origin.sheet_index) {
                violates = config.direction_check_sheet_order;
            }
            if (!violates) continue;
            std::string text = workbook.describe(ref.first);
            if (ref.is_range()) text += ":" + format_a1(ref.last.column, ref.last.row);
            offending.push_back(text);
        }
        if (offending.empty()) return std::nullopt;
        return "references: " + join(offending);
    });
}

std::vector<ViolationGroup> group_violations(const std::vector<Violation>& violations, const Workbook& workbook) {
    std::map<std::pair<RuleId, std::string>, std::vector<Violation>> buckets;
    for (const auto& violation : violations) {
        const CellContent* content = workbook.find(violation.location);
        if (!content || !content->is_formula()) {
            throw Error("violation at " + workbook.describe(violation.location) + " does not point at a formula");
        }
        std::string signature = normalize_r1c1(content->formula().ast, violation.location);
        buckets[{violation.rule, std::move(signature)}].push_back(violation);
    }
    std::vector<ViolationGroup> groups;
    groups.reserve(buckets.size());
    for (auto& [key, members] : buckets) {
        std::stable_sort(members.begin(), members.end(),
                         [](const Violation& a, const Violation& b) { return a.location < b.location; });
        groups.push_back({key.first, key.second, std::move(members)});
    }
    std::stable_sort(groups.begin(), groups.end(), [](const ViolationGroup& a, const ViolationGroup& b) {
        if (a.rule != b.rule) return a.rule < b.rule;
        return a.members.front().location < b.members.front().location;
    });
    return groups;
}

InspectionReport run_inspection(const Workbook& workbook, const RuleConfig& config) {
    config.validate();
    InspectionReport report;
    report.config_name = config.name;
    for (const auto& sheet : workbook.worksheets()) report.sheet_names.push_back(sheet.name());
    report.cell_count = non_empty_cell_count(workbook);
    report.formula_count = formula_count(workbook);

    std::array<std::vector<Violation>, 3> per_rule = {
        check_constants(workbook, config),
        check_complexity(workbook, config),
        check_reading_direction(workbook, config),
    };
    for (RuleId rule : kAllRules) {
        const auto& found = per_rule[static_cast<std::size_t>(rule)];
        RuleStatistics stats{rule, found.size(), std::nullopt};
        if (report.formula_count > 0) {
            stats.ratio = static_cast<double>(found.size()) / static_cast<double>(report.formula_count);
        }
        report.statistics[static_cast<std::size_t>(rule)] = stats;
        report.violations.insert(report.violations.end(), found.begin(), found.end());
    }
    report.groups = group_violations(report.violations, workbook);
    return report;
}

}  // namespace cellcheck
