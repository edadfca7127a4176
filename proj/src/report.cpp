#include "cellcheck/report.hpp"

#include "cellcheck/workbook.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace cellcheck {

using Json = nlohmann::ordered_json;

namespace {

/// Left-aligned label column followed by right-aligned value columns.
class Table {
public:
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    void blank() { rows_.emplace_back(); }

    std::string render() const {
        std::vector<std::size_t> widths;
        for (const auto& row : rows_) {
            if (widths.size() < row.size()) widths.resize(row.size(), 0);
            for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
        }
        std::string out;
        for (const auto& row : rows_) {
            std::string line;
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i == 0) {
                    line += row[i] + std::string(widths[i] - row[i].size(), ' ');
                } else {
                    line += "  " + std::string(widths[i] - row[i].size(), ' ') + row[i];
                }
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out += line + "\n";
        }
        return out;
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

constexpr std::string_view kRelativeRow = ".. relative to # of formulae";

Json ratio_json(std::optional<double> ratio) {
    return ratio ? Json(*ratio) : Json(nullptr);
}

Json header(std::string_view kind) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = kind;
    return j;
}

Json inspection_body(const InspectionReport& report) {
    Json j;
    j["config"] = report.config_name;
    j["sheets"] = report.sheet_names;
    j["cell_count"] = report.cell_count;
    j["formula_count"] = report.formula_count;
    Json rules = Json::array();
    for (RuleId rule : kAllRules) {
        const RuleStatistics& stats = report.stats(rule);
        Json r;
        r["id"] = rule_id_name(rule);
        r["title"] = rule_title(rule);
        r["violation_count"] = stats.violation_count;
        r["ratio"] = ratio_json(stats.ratio);
        Json groups = Json::array();
        for (const auto& group : report.groups) {
            if (group.rule != rule) continue;
            Json g;
            g["signature"] = group.signature;
            Json members = Json::array();
            for (const auto& v : group.members) {
                Json m;
                m["cell"] = format_sheet_cell({report.sheet_names.at(static_cast<std::size_t>(v.location.sheet_index)),
                                               v.location.column, v.location.row});
                m["detail"] = v.detail;
                members.push_back(std::move(m));
            }
            g["members"] = std::move(members);
            groups.push_back(std::move(g));
        }
        r["groups"] = std::move(groups);
        rules.push_back(std::move(r));
    }
    j["rules"] = std::move(rules);
    return j;
}

std::string_view status_name(ScenarioStatus status) {
    switch (status) {
        case ScenarioStatus::Passed: return "passed";
        case ScenarioStatus::Failed: return "failed";
        case ScenarioStatus::NotApplicable: return "X";
    }
    return "";
}

Json scenarios_body(const ScenarioAggregate& aggregate) {
    Json j;
    if (aggregate.not_applicable) {
        j["failed"] = "X";
    } else {
        j["failed"] = aggregate.failed_count;
    }
    Json wrong = Json::array();
    for (const auto& result : aggregate.results) {
        if (aggregate.not_applicable) {
            wrong.push_back("X");
        } else {
            wrong.push_back(result.wrong_result_count);
        }
    }
    j["wrong_results"] = std::move(wrong);
    Json scenarios = Json::array();
    for (const auto& result : aggregate.results) {
        Json s;
        s["name"] = result.name;
        s["status"] = status_name(result.status);
        s["wrong_result_count"] = result.wrong_result_count;
        Json missing = Json::array();
        for (const auto& cell : result.missing_inputs) missing.push_back(format_sheet_cell(cell));
        s["missing_inputs"] = std::move(missing);
        Json records = Json::array();
        for (const auto& record : result.records) {
            Json r;
            r["cell"] = format_sheet_cell(record.expectation.cell);
            r["label"] = record.expectation.label;
            r["expected"] = record.expectation.expected;
            r["tolerance"] = record.expectation.tolerance;
            r["actual"] = record.actual ? Json(*record.actual) : Json(nullptr);
            r["delta"] = record.delta ? Json(*record.delta) : Json(nullptr);
            r["ok"] = record.within_tolerance;
            r["error"] = record.error;
            records.push_back(std::move(r));
        }
        s["expectations"] = std::move(records);
        scenarios.push_back(std::move(s));
    }
    j["scenarios"] = std::move(scenarios);
    return j;
}

Json delta_json(const MetricDelta& delta) {
    Json j;
    j["before"] = delta.before;
    j["after"] = delta.after;
    j["relative_increase"] = ratio_json(delta.relative_increase);
    return j;
}

std::string dump(const Json& j) {
    return j.dump(2) + "\n";
}

void add_rule_rows(Table& table, const InspectionReport& report) {
    for (RuleId rule : {RuleId::Complexity, RuleId::Constants, RuleId::ReadingDirection}) {
        const RuleStatistics& stats = report.stats(rule);
        table.add({std::string(rule_title(rule)), std::to_string(stats.violation_count)});
        table.add({std::string(kRelativeRow), format_percent(stats.ratio)});
    }
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
    if (iequals(name, "json")) return ReportFormat::Json;
    if (iequals(name, "table")) return ReportFormat::Table;
    return std::nullopt;
}

WorkbookMetrics measure(const Workbook& workbook) {
    WorkbookMetrics metrics;
    for (const auto& sheet : workbook.worksheets()) metrics.sheet_names.push_back(sheet.name());
    metrics.cell_count = non_empty_cell_count(workbook);
    metrics.formula_count = formula_count(workbook);
    return metrics;
}

std::string format_percent(std::optional<double> ratio) {
    if (!ratio) return "~";
    double percent = std::round(*ratio * 100.0);
    if (percent == 0.0) percent = 0.0;  // no "-0%"
    return std::to_string(static_cast<long long>(percent)) + "%";
}

std::string write_report(const InspectionReport& report, ReportFormat format) {
    if (format == ReportFormat::Json) {
        Json j = header("inspection");
        j.update(inspection_body(report));
        return dump(j);
    }
    Table table;
    table.add({"configuration", report.config_name});
    table.add({"# of cells", std::to_string(report.cell_count)});
    table.add({"# of formulae", std::to_string(report.formula_count)});
    add_rule_rows(table, report);
    return table.render();
}

std::string write_report(const WorkbookMetrics& metrics, ReportFormat format) {
    if (format == ReportFormat::Json) {
        Json j = header("metrics");
        j["sheets"] = metrics.sheet_names;
        j["cell_count"] = metrics.cell_count;
        j["formula_count"] = metrics.formula_count;
        return dump(j);
    }
    Table table;
    table.add({"# of sheets", std::to_string(metrics.sheet_names.size())});
    table.add({"# of cells", std::to_string(metrics.cell_count)});
    table.add({"# of formulae", std::to_string(metrics.formula_count)});
    return table.render();
}

std::string write_report(const ComparisonReport& report, ReportFormat format) {
    if (format == ReportFormat::Json) {
        Json j = header("comparison");
        j["config"] = report.config_name;
        j["cells"] = delta_json(report.cells);
        j["formulas"] = delta_json(report.formulas);
        Json rules = Json::array();
        for (RuleId rule : kAllRules) {
            Json r;
            r["id"] = rule_id_name(rule);
            r["title"] = rule_title(rule);
            r.update(delta_json(report.defect(rule)));
            r["ratio_before"] = ratio_json(report.before.stats(rule).ratio);
            r["ratio_after"] = ratio_json(report.after.stats(rule).ratio);
            rules.push_back(std::move(r));
        }
        j["rules"] = std::move(rules);
        return dump(j);
    }
    Table table;
    table.add({"configuration", report.config_name});
    table.add({"", "before", "after"});
    table.add({"# of cells", std::to_string(report.cells.before), std::to_string(report.cells.after)});
    table.add({"relative cell increase", "", format_percent(report.cells.relative_increase)});
    table.add({"# of formulae", std::to_string(report.formulas.before), std::to_string(report.formulas.after)});
    table.add({"relative formulae increase", "", format_percent(report.formulas.relative_increase)});
    for (RuleId rule : {RuleId::Complexity, RuleId::Constants, RuleId::ReadingDirection}) {
        const MetricDelta& delta = report.defect(rule);
        table.add({std::string(rule_title(rule)), std::to_string(delta.before), std::to_string(delta.after)});
        table.add({std::string(kRelativeRow), format_percent(report.before.stats(rule).ratio),
                   format_percent(report.after.stats(rule).ratio)});
        table.add({"relative defect increase", "", format_percent(delta.relative_increase)});
    }
    return table.render();
}

std::string write_report(const ScenarioAggregate& aggregate, ReportFormat format) {
    if (format == ReportFormat::Json) {
        Json j = header("scenarios");
        j.update(scenarios_body(aggregate));
        return dump(j);
    }
    std::string out = "failed in # of scenarios: " + aggregate.failed_text() + "\n";
    out += "# of wrong results / scenario: " + aggregate.wrong_results_text() + "\n";
    for (const auto& result : aggregate.results) {
        out += "\nscenario " + result.name + ": " + std::string(status_name(result.status));
        if (result.status == ScenarioStatus::Failed) {
            out += " (" + std::to_string(result.wrong_result_count) + " wrong)";
        }
        out += "\n";
        for (const auto& cell : result.missing_inputs) out += "  missing input " + format_sheet_cell(cell) + "\n";
        for (const auto& record : result.records) {
            if (record.within_tolerance) continue;
            out += "  " + format_sheet_cell(record.expectation.cell);
            if (!record.expectation.label.empty()) out += " (" + record.expectation.label + ")";
            out += ": expected " + format_number(record.expectation.expected);
            if (record.actual) {
                out += ", got " + format_number(*record.actual);
            } else {
                out += ", " + record.error;
            }
            out += "\n";
        }
    }
    return out;
}

std::string write_report(const CorpusReport& report, ReportFormat format) {
    if (format == ReportFormat::Json) {
        Json j = header("corpus");
        j["config"] = report.config_name;
        Json workbooks = Json::array();
        for (const auto& entry : report.entries) {
            Json w;
            w["name"] = entry.name;
            if (entry.inspection) {
                w["status"] = "ok";
                Json body = inspection_body(*entry.inspection);
                body.erase("config");
                w.update(body);
                if (entry.scenarios) w["scenarios"] = scenarios_body(*entry.scenarios);
            } else {
                w["status"] = "X";
                w["error"] = entry.error;
            }
            workbooks.push_back(std::move(w));
        }
        j["workbooks"] = std::move(workbooks);
        return dump(j);
    }

    Table table;
    std::vector<std::string> names{"configuration " + report.config_name};
    for (const auto& entry : report.entries) names.push_back(entry.name);
    table.add(std::move(names));

    auto row = [&](std::string label, auto value_of) {
        std::vector<std::string> cells{std::move(label)};
        for (const auto& entry : report.entries) cells.push_back(entry.inspection ? value_of(entry) : "X");
        table.add(std::move(cells));
    };
    row("# of cells", [](const CorpusEntry& e) { return std::to_string(e.inspection->cell_count); });
    row("# of formulae", [](const CorpusEntry& e) { return std::to_string(e.inspection->formula_count); });
    if (report.with_scenarios) {
        row("Failed in # of scenarios", [](const CorpusEntry& e) {
            return e.scenarios ? e.scenarios->failed_text() : std::string("X");
        });
        row("# of wrong results / scenario", [](const CorpusEntry& e) {
            return e.scenarios ? e.scenarios->wrong_results_text() : std::string("X");
        });
    }
    for (RuleId rule : {RuleId::Complexity, RuleId::Constants, RuleId::ReadingDirection}) {
        row(std::string(rule_title(rule)),
            [rule](const CorpusEntry& e) { return std::to_string(e.inspection->stats(rule).violation_count); });
        row(std::string(kRelativeRow), [rule](const CorpusEntry& e) { return format_percent(e.inspection->stats(rule).ratio); });
    }
    return table.render();
}

}  // namespace cellcheck
