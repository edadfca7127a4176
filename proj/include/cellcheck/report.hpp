#pragma once

#include "cellcheck/comparison.hpp"
#include "cellcheck/rules.hpp"
#include "cellcheck/scenario.hpp"
#include "cellcheck/workbook.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cellcheck {

/// Bumped whenever a JSON field is renamed, removed or changes meaning.
inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { Json, Table };

std::optional<ReportFormat> parse_report_format(std::string_view name);

struct WorkbookMetrics {
    std::vector<std::string> sheet_names;
    std::size_t cell_count = 0;
    std::size_t formula_count = 0;
};

WorkbookMetrics measure(const Workbook& workbook);

/// One column of a corpus table.
struct CorpusEntry {
    std::string name;                           // file name, no directory
    std::optional<InspectionReport> inspection;  // empty when loading failed
    std::optional<ScenarioAggregate> scenarios;
    std::string error;
};

struct CorpusReport {
    std::string config_name;
    bool with_scenarios = false;
    std::vector<CorpusEntry> entries;
};

/// Whole-percent rendering, rounded half away from zero; "~" when empty.
std::string format_percent(std::optional<double> ratio);

// Reports end with a newline. JSON output depends only on the report
// contents, so equal reports serialize to identical bytes.
std::string write_report(const InspectionReport& report, ReportFormat format);
std::string write_report(const WorkbookMetrics& metrics, ReportFormat format);
std::string write_report(const ComparisonReport& report, ReportFormat format);
std::string write_report(const ScenarioAggregate& aggregate, ReportFormat format);
std::string write_report(const CorpusReport& report, ReportFormat format);

}  // namespace cellcheck
