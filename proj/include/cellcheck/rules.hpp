#pragma once

#include "cellcheck/address.hpp"
#include "cellcheck/workbook.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cellcheck {

enum class RuleId { Constants, Complexity, ReadingDirection };

inline constexpr std::array<RuleId, 3> kAllRules = {RuleId::Constants, RuleId::Complexity,
                                                    RuleId::ReadingDirection};

/// "CONSTANTS", "COMPLEXITY", "READING_DIRECTION".
std::string_view rule_id_name(RuleId rule);
/// Row label used in tabular reports.
std::string_view rule_title(RuleId rule);

/// Thresholds for the three best-practice checks.
struct RuleConfig {
    std::string name = "config1";
    std::set<std::string> constants_ignored_values;
    std::set<std::string> constants_ignored_functions;  // uppercase names
    int complexity_max_operations = 5;
    int complexity_max_nesting = 2;
    bool direction_check_right_below = true;
    bool direction_check_sheet_order = true;

    /// Every constant is a defect; more than 5 operations or nesting deeper
    /// than 2 is a defect.
    static RuleConfig config1();
    /// Ignores the constant "1" and constants inside INDEX; at most 2
    /// operations; nesting limit 2.
    static RuleConfig config2();
    static std::optional<RuleConfig> preset(std::string_view name);

    /// Throws Error when a threshold is below 1.
    void validate() const;

    /// Equal thresholds, ignoring the name.
    bool same_settings(const RuleConfig& other) const;
};

struct Violation {
    RuleId rule;
    CellAddress location;
    std::string detail;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Violations of one rule whose formulas are copies of each other.
struct ViolationGroup {
    RuleId rule;
    std::string signature;  // normalize_r1c1 of the member formulas
    std::vector<Violation> members;
};

struct RuleStatistics {
    RuleId rule;
    std::size_t violation_count = 0;
    std::optional<double> ratio;  // violation_count / formula_count; empty when there are no formulas
};

struct InspectionReport {
    std::string config_name;
    std::vector<std::string> sheet_names;
    std::size_t cell_count = 0;
    std::size_t formula_count = 0;
    std::vector<Violation> violations;  // rule order, then (sheet, row, column)
    std::vector<ViolationGroup> groups;
    std::array<RuleStatistics, 3> statistics{};

    const RuleStatistics& stats(RuleId rule) const { return statistics[static_cast<std::size_t>(rule)]; }
    std::vector<Violation> violations_of(RuleId rule) const;
};

// Each check reports at most one violation per formula cell, in
// (sheet, row, column) order.
std::vector<Violation> check_constants(const Workbook& workbook, const RuleConfig& config);
std::vector<Violation> check_complexity(const Workbook& workbook, const RuleConfig& config);
std::vector<Violation> check_reading_direction(const Workbook& workbook, const RuleConfig& config);

/// Partitions violations by (rule, R1C1 signature of the violating formula).
/// Groups are ordered by rule, then by their first member; members by
/// position. Throws Error if a violation does not point at a formula cell.
std::vector<ViolationGroup> group_violations(const std::vector<Violation>& violations, const Workbook& workbook);

InspectionReport run_inspection(const Workbook& workbook, const RuleConfig& config);

}  // namespace cellcheck
