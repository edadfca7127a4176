#include "cellcheck/comparison.hpp"

namespace cellcheck {

std::optional<double> relative_increase(std::size_t before, std::size_t after) {
    if (before == 0) return std::nullopt;
    return (static_cast<double>(after) - static_cast<double>(before)) / static_cast<double>(before);
}

namespace {

MetricDelta delta(std::size_t before, std::size_t after) {
    return MetricDelta{before, after, relative_increase(before, after)};
}

}  // namespace

ComparisonReport compare_reports(InspectionReport before, InspectionReport after) {
    ComparisonReport report;
    report.config_name = after.config_name;
    report.cells = delta(before.cell_count, after.cell_count);
    report.formulas = delta(before.formula_count, after.formula_count);
    for (RuleId rule : kAllRules) {
        report.defects[static_cast<std::size_t>(rule)] =
            delta(before.stats(rule).violation_count, after.stats(rule).violation_count);
    }
    report.before = std::move(before);
    report.after = std::move(after);
    return report;
}

ComparisonReport compare_workbooks(const Workbook& before, const Workbook& after, const RuleConfig& config) {
    return compare_reports(run_inspection(before, config), run_inspection(after, config));
}

}  // namespace cellcheck
