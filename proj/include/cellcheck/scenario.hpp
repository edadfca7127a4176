#pragma once

#include "cellcheck/address.hpp"
#include "cellcheck/workbook.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cellcheck {

/// Results must be accurate to the first decimal, so a correctly rounded
/// value is at most half a tenth away from the exact one.
inline constexpr double kDefaultTolerance = 0.05;

struct Expectation {
    SheetCell cell;
    double expected = 0.0;
    double tolerance = kDefaultTolerance;
    std::string label;
};

struct TestScenario {
    std::string name;
    std::map<SheetCell, CellValue> inputs;
    std::vector<Expectation> expectations;

    /// Throws FormatError on a non-positive tolerance or a repeated
    /// expectation cell.
    void validate() const;
};

enum class ScenarioStatus { Passed, Failed, NotApplicable };

struct ExpectationRecord {
    Expectation expectation;
    std::optional<double> actual;  // empty when the cell did not yield a number
    std::optional<double> delta;
    bool within_tolerance = false;
    std::string error;             // evaluation failure or non-numeric result
};

struct ScenarioResult {
    std::string name;
    ScenarioStatus status = ScenarioStatus::Passed;
    std::size_t wrong_result_count = 0;
    std::vector<ExpectationRecord> records;
    std::vector<SheetCell> missing_inputs;
};

struct ScenarioAggregate {
    std::vector<ScenarioResult> results;
    std::size_t failed_count = 0;
    bool not_applicable = false;  // the workbook is marked "X"

    /// "X" or the number of failed scenarios.
    std::string failed_text() const;
    /// Comma-joined wrong-result counts ("0,5,1"), or one "X" per scenario.
    std::string wrong_results_text() const;
};

/// Evaluates every expectation cell with the scenario inputs as overrides.
/// NotApplicable when an input cell does not exist in the workbook.
ScenarioResult run_scenario(const Workbook& workbook, const TestScenario& scenario);

/// Throws Error on an empty scenario list.
ScenarioAggregate run_all(const Workbook& workbook, const std::vector<TestScenario>& scenarios);

struct DataErrorReport {
    std::size_t checked_cell_count = 0;
    std::size_t mismatch_count = 0;
    std::vector<SheetCell> mismatches;

    /// mismatch_count / checked_cell_count; 0 when nothing was checked.
    double cell_error_rate() const;
};

/// Compares manually entered literal cells against reference values. Numbers
/// compare exactly; a missing or formula cell counts as a mismatch.
DataErrorReport count_data_errors(const Workbook& workbook, const std::map<SheetCell, CellValue>& reference);

/// Sheet ordinal for a named cell; an empty name is the first worksheet.
std::optional<CellAddress> resolve(const Workbook& workbook, const SheetCell& cell);

}  // namespace cellcheck
