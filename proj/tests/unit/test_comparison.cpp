#include "cellcheck/comparison.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace cellcheck;
using testing::fixture;

namespace {

std::string literal_cells(int count) {
    std::string text;
    for (int i = 0; i < count; ++i) text += "S!A" + std::to_string(i + 1) + "=" + std::to_string(i) + "\n";
    return text;
}

}  // namespace

TEST_CASE("relative_increase") {
    CHECK(relative_increase(100, 153) == doctest::Approx(0.53));
    CHECK(relative_increase(10, 10) == 0.0);
    CHECK(*relative_increase(52, 2) < 0);
    CHECK_FALSE(relative_increase(0, 5));
    CHECK_FALSE(relative_increase(0, 0));
}

TEST_CASE("cell growth of 53%") {
    auto before = fixture(literal_cells(100));
    auto after = fixture(literal_cells(153));
    auto report = compare_workbooks(before, after, RuleConfig::config1());
    CHECK(report.cells.before == 100);
    CHECK(report.cells.after == 153);
    CHECK(report.cells.relative_increase == doctest::Approx(0.53));
    CHECK_FALSE(report.formulas.relative_increase);
    CHECK(report.config_name == "config1");
}

TEST_CASE("defects from a zero baseline are undefined; decreases are negative") {
    std::string clean = "S!A1=1\nS!B1==A1\n";
    std::string five_constants;
    for (int i = 1; i <= 5; ++i) five_constants += "S!B" + std::to_string(i) + "==A1*0.3\n";
    auto report = compare_workbooks(fixture(clean), fixture(five_constants), RuleConfig::config1());
    CHECK(report.defect(RuleId::Constants).before == 0);
    CHECK(report.defect(RuleId::Constants).after == 5);
    CHECK_FALSE(report.defect(RuleId::Constants).relative_increase);

    auto shrink = compare_workbooks(fixture(five_constants), fixture(clean), RuleConfig::config1());
    CHECK(*shrink.defect(RuleId::Constants).relative_increase == doctest::Approx(-1.0));
}

TEST_CASE("compare_reports reuses inspections") {
    auto a = run_inspection(fixture("S!A1=1\n"), RuleConfig::config2());
    auto b = run_inspection(fixture("S!A1=1\nS!A2=2\n"), RuleConfig::config2());
    auto report = compare_reports(a, b);
    CHECK(report.config_name == "config2");
    CHECK(report.cells.relative_increase == 1.0);
    CHECK(report.after.cell_count == 2);
}
