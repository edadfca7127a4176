#include "cellcheck/report.hpp"
#include "test_support.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace cellcheck;
using testing::fixture;
using nlohmann::json;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        out.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

}  // namespace

TEST_CASE("format_percent") {
    CHECK(format_percent(std::nullopt) == "~");
    CHECK(format_percent(0.0) == "0%");
    CHECK(format_percent(0.53) == "53%");
    CHECK(format_percent(0.005) == "1%");
    CHECK(format_percent(-0.93) == "-93%");
    CHECK(format_percent(88.85) == "8885%");
    CHECK(format_percent(1.0 / 99.0) == "1%");
    CHECK(format_percent(-0.001) == "0%");
}

TEST_CASE("no formulas renders ~ in every ratio row") {
    auto table = write_report(run_inspection(fixture("S!A1=1\n"), RuleConfig::config1()), ReportFormat::Table);
    int ratio_rows = 0;
    for (const auto& line : lines_of(table)) {
        if (line.rfind(".. relative to # of formulae", 0) == 0) {
            ++ratio_rows;
            CHECK(line.back() == '~');
        }
    }
    CHECK(ratio_rows == 3);
}

TEST_CASE("inspection table follows the published row order") {
    auto report = run_inspection(fixture("S!A1=1\nS!B1==A1*0.3\n"), RuleConfig::config1());
    auto lines = lines_of(write_report(report, ReportFormat::Table));
    REQUIRE(lines.size() == 9);
    CHECK(lines[1].rfind("# of cells", 0) == 0);
    CHECK(lines[2].rfind("# of formulae", 0) == 0);
    CHECK(lines[3].rfind("Formula Complexity", 0) == 0);
    CHECK(lines[5].rfind("No Constants In Formulae", 0) == 0);
    CHECK(lines[6].find("100%") != std::string::npos);
    CHECK(lines[7].rfind("Reading direction", 0) == 0);
}

TEST_CASE("empty workbook JSON") {
    auto j = json::parse(write_report(run_inspection(Workbook{}, RuleConfig::config1()), ReportFormat::Json));
    CHECK(j["schema_version"] == 1);
    CHECK(j["kind"] == "inspection");
    CHECK(j["cell_count"] == 0);
    CHECK(j["formula_count"] == 0);
    REQUIRE(j["rules"].size() == 3);
    CHECK(j["rules"][0]["id"] == "CONSTANTS");
    CHECK(j["rules"][1]["id"] == "COMPLEXITY");
    CHECK(j["rules"][2]["id"] == "READING_DIRECTION");
    for (const auto& rule : j["rules"]) {
        CHECK(rule["violation_count"] == 0);
        CHECK(rule["ratio"].is_null());
        CHECK(rule["groups"].empty());
    }
}

TEST_CASE("inspection JSON lists groups and members") {
    auto wb = fixture("sheet Data\nData!A1=1\nData!B1==A1*0.3\nData!B2==A2*0.3\n");
    auto j = json::parse(write_report(run_inspection(wb, RuleConfig::config1()), ReportFormat::Json));
    const auto& constants = j["rules"][0];
    CHECK(constants["violation_count"] == 2);
    CHECK(constants["ratio"] == 1.0);
    REQUIRE(constants["groups"].size() == 1);
    CHECK(constants["groups"][0]["signature"] == "=R[0]C[-1]*0.3");
    CHECK(constants["groups"][0]["members"][1]["cell"] == "Data!B2");
    CHECK(j["sheets"] == json::array({"Data"}));
}

TEST_CASE("JSON output is byte-stable") {
    auto wb = testing::fixture(testing::random_workbook_fixture(7));
    std::string first = write_report(run_inspection(wb, RuleConfig::config2()), ReportFormat::Json);
    for (int i = 0; i < 3; ++i) {
        CHECK(write_report(run_inspection(wb, RuleConfig::config2()), ReportFormat::Json) == first);
    }
}

TEST_CASE("scenario aggregate rendering") {
    ScenarioAggregate aggregate;
    for (std::size_t wrong : {0u, 5u, 0u}) {
        ScenarioResult r;
        r.name = "s" + std::to_string(aggregate.results.size());
        r.status = wrong ? ScenarioStatus::Failed : ScenarioStatus::Passed;
        r.wrong_result_count = wrong;
        aggregate.results.push_back(r);
    }
    aggregate.failed_count = 1;
    auto table = write_report(aggregate, ReportFormat::Table);
    CHECK(table.find("failed in # of scenarios: 1\n") != std::string::npos);
    CHECK(table.find("# of wrong results / scenario: 0,5,0\n") != std::string::npos);
    auto j = json::parse(write_report(aggregate, ReportFormat::Json));
    CHECK(j["failed"] == 1);
    CHECK(j["wrong_results"] == json::array({0, 5, 0}));

    aggregate.not_applicable = true;
    aggregate.results[1].status = ScenarioStatus::NotApplicable;
    auto marked = json::parse(write_report(aggregate, ReportFormat::Json));
    CHECK(marked["failed"] == "X");
    CHECK(marked["wrong_results"] == json::array({"X", "X", "X"}));
    CHECK(marked["scenarios"][1]["status"] == "X");
    CHECK(write_report(aggregate, ReportFormat::Table).find("scenario: X,X,X") != std::string::npos);
}

TEST_CASE("comparison rendering") {
    std::string before, after;
    for (int i = 1; i <= 100; ++i) before += "S!A" + std::to_string(i) + "=1\n";
    after = before;
    for (int i = 1; i <= 53; ++i) after += "S!B" + std::to_string(i) + "==A" + std::to_string(i) + "*2\n";
    auto report = compare_workbooks(fixture(before), fixture(after), RuleConfig::config1());
    auto table = write_report(report, ReportFormat::Table);
    CHECK(table.find("relative cell increase") != std::string::npos);
    CHECK(lines_of(table)[3].find("53%") != std::string::npos);
    CHECK(lines_of(table)[5].back() == '~');  // formulae from zero
    auto j = json::parse(write_report(report, ReportFormat::Json));
    CHECK(j["kind"] == "comparison");
    CHECK(j["cells"]["relative_increase"] == 0.53);
    CHECK(j["formulas"]["relative_increase"].is_null());
    CHECK(j["rules"][0]["after"] == 53);
}

TEST_CASE("corpus table has one column per workbook and X for failures") {
    CorpusReport report;
    report.config_name = "config1";
    report.with_scenarios = true;
    CorpusEntry good;
    good.name = "a.fixture";
    good.inspection = run_inspection(fixture("S!A1=1\nS!B1==A1*2\n"), RuleConfig::config1());
    CorpusEntry bad;
    bad.name = "b.xlsx";
    bad.error = "not a ZIP archive";
    report.entries = {good, bad};
    auto lines = lines_of(write_report(report, ReportFormat::Table));
    CHECK(lines[0].find("a.fixture") != std::string::npos);
    CHECK(lines[0].find("b.xlsx") != std::string::npos);
    for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].back() == 'X');
    auto j = json::parse(write_report(report, ReportFormat::Json));
    CHECK(j["workbooks"][0]["status"] == "ok");
    CHECK(j["workbooks"][1]["status"] == "X");
}

TEST_CASE("metrics") {
    auto m = measure(fixture("S!A1=1\nS!A2==A1\nT!A1=x\n"));
    CHECK(m.cell_count == 3);
    CHECK(m.formula_count == 1);
    auto j = json::parse(write_report(m, ReportFormat::Json));
    CHECK(j["kind"] == "metrics");
    CHECK(j["sheets"] == json::array({"S", "T"}));
    CHECK(parse_report_format("JSON") == ReportFormat::Json);
    CHECK_FALSE(parse_report_format("csv"));
}
