#include "cellcheck/scenario.hpp"

#include "cellcheck/errors.hpp"
#include "cellcheck/evaluator.hpp"

#include <cmath>
#include <set>

namespace cellcheck {

namespace {

// Absorbs binary representation noise right at the tolerance boundary
// (|2.85 - 2.8| is 0.04999999999999982 or 0.0500000000000003 depending on
// how the operands were produced).
constexpr double kBoundarySlack = 1e-12;

}  // namespace

void TestScenario::validate() const {
    std::set<SheetCell> seen;
    for (const auto& e : expectations) {
        if (!(e.tolerance > 0)) {
            throw FormatError("scenario '" + name + "': tolerance must be positive at " + format_sheet_cell(e.cell));
        }
        if (!seen.insert(e.cell).second) {
            throw FormatError("scenario '" + name + "': repeated expectation for " + format_sheet_cell(e.cell));
        }
    }
}

std::optional<CellAddress> resolve(const Workbook& workbook, const SheetCell& cell) {
    if (workbook.sheet_count() == 0) return std::nullopt;
    int sheet = 0;
    if (!cell.sheet.empty()) {
        auto index = workbook.sheet_index(cell.sheet);
        if (!index) return std::nullopt;
        sheet = *index;
    }
    return CellAddress{sheet, cell.column, cell.row};
}

std::string ScenarioAggregate::failed_text() const {
    return not_applicable ? "X" : std::to_string(failed_count);
}

std::string ScenarioAggregate::wrong_results_text() const {
    std::string out;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (i) out.push_back(',');
        out += not_applicable ? "X" : std::to_string(results[i].wrong_result_count);
    }
    return out;
}

ScenarioResult run_scenario(const Workbook& workbook, const TestScenario& scenario) {
    ScenarioResult result;
    result.name = scenario.name;

    Overrides overrides;
    for (const auto& [cell, value] : scenario.inputs) {
        auto address = resolve(workbook, cell);
        if (!address || !workbook.find(*address)) {
            result.missing_inputs.push_back(cell);
            continue;
        }
        overrides.emplace(*address, value);
    }
    if (!result.missing_inputs.empty()) {
        result.status = ScenarioStatus::NotApplicable;
        return result;
    }

    Evaluator evaluator(workbook, std::move(overrides));
    for (const auto& expectation : scenario.expectations) {
        ExpectationRecord record;
        record.expectation = expectation;
        if (auto address = resolve(workbook, expectation.cell)) {
            try {
                CellValue actual = evaluator.evaluate(*address);
                if (actual.is_number()) {
                    record.actual = actual.as_number();
                    record.delta = std::fabs(actual.as_number() - expectation.expected);
                    record.within_tolerance = *record.delta <= expectation.tolerance + kBoundarySlack;
                } else {
                    record.error = "non-numeric result " + actual.to_string();
                }
            } catch (const Error& e) {
                record.error = e.what();
            }
        } else {
            record.error = "no worksheet '" + expectation.cell.sheet + "'";
        }
        if (!record.within_tolerance) ++result.wrong_result_count;
        result.records.push_back(std::move(record));
    }
    result.status = result.wrong_result_count ? ScenarioStatus::Failed : ScenarioStatus::Passed;
    return result;
}

ScenarioAggregate run_all(const Workbook& workbook, const std::vector<TestScenario>& scenarios) {
    if (scenarios.empty()) throw Error("at least one scenario is required");
    ScenarioAggregate aggregate;
    for (const auto& scenario : scenarios) {
        aggregate.results.push_back(run_scenario(workbook, scenario));
        const auto& result = aggregate.results.back();
        if (result.status == ScenarioStatus::NotApplicable) aggregate.not_applicable = true;
        if (result.status == ScenarioStatus::Failed) ++aggregate.failed_count;
    }
    if (aggregate.not_applicable) aggregate.failed_count = 0;
    return aggregate;
}

double DataErrorReport::cell_error_rate() const {
    if (checked_cell_count == 0) return 0.0;
    return static_cast<double>(mismatch_count) / static_cast<double>(checked_cell_count);
}

DataErrorReport count_data_errors(const Workbook& workbook, const std::map<SheetCell, CellValue>& reference) {
    DataErrorReport report;
    for (const auto& [cell, expected] : reference) {
        ++report.checked_cell_count;
        bool match = false;
        if (auto address = resolve(workbook, cell)) {
            const CellContent* content = workbook.find(*address);
            if (content && content->is_literal()) match = content->literal() == expected;
        }
        if (!match) {
            ++report.mismatch_count;
            report.mismatches.push_back(cell);
        }
    }
    return report;
}

}  // namespace cellcheck
