#pragma once

#include "cellcheck/rules.hpp"
#include "cellcheck/workbook.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>

namespace cellcheck {

/// (after - before) / before; empty when before is zero.
std::optional<double> relative_increase(std::size_t before, std::size_t after);

struct MetricDelta {
    std::size_t before = 0;
    std::size_t after = 0;
    std::optional<double> relative_increase;
};

/// Growth of a modified workbook relative to the one it was derived from.
struct ComparisonReport {
    std::string config_name;
    MetricDelta cells;
    MetricDelta formulas;
    std::array<MetricDelta, 3> defects{};  // indexed by RuleId
    InspectionReport before;
    InspectionReport after;

    const MetricDelta& defect(RuleId rule) const { return defects[static_cast<std::size_t>(rule)]; }
};

ComparisonReport compare_workbooks(const Workbook& before, const Workbook& after, const RuleConfig& config);

/// Same as compare_workbooks, for already computed inspections.
ComparisonReport compare_reports(InspectionReport before, InspectionReport after);

}  // namespace cellcheck
