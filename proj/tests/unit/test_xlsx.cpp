#include "cellcheck/errors.hpp"
#include "cellcheck/io.hpp"
#include "cellcheck/report.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace cellcheck;
using testing::data_path;

namespace {

const CellContent& at(const Workbook& wb, int sheet, std::string_view a1) {
    auto a = parse_a1(a1);
    REQUIRE(a);
    const CellContent* content = wb.find({sheet, a->column, a->row});
    REQUIRE_MESSAGE(content, a1 << " is empty");
    return *content;
}

}  // namespace

TEST_CASE("minimal workbook with A1=5") {
    Workbook wb = load_xlsx(data_path("minimal.xlsx"));
    REQUIRE(wb.sheet_count() == 1);
    CHECK(wb.sheet(0).name() == "Sheet1");
    CHECK(non_empty_cell_count(wb) == 1);
    CHECK(at(wb, 0, "A1").literal() == CellValue::number(5));
}

TEST_CASE("shared formulas are materialized per cell") {
    std::vector<std::string> warnings;
    Workbook wb = load_xlsx(data_path("shared_formulas.xlsx"), warnings);
    CHECK(warnings.empty());
    CHECK(formula_count(wb) == 8);
    // hand-translated fill-down / fill-right
    CHECK(at(wb, 0, "B1").formula().source == "=A1*0.3");
    CHECK(at(wb, 0, "B2").formula().source == "=A2*0.3");
    CHECK(at(wb, 0, "B5").formula().source == "=A5*0.3");
    CHECK(at(wb, 0, "C1").formula().source == "=SUM($A$1:A1)+A$1");
    CHECK(at(wb, 0, "D1").formula().source == "=SUM($A$1:B1)+B$1");
    CHECK(at(wb, 0, "E1").formula().source == "=SUM($A$1:C1)+C$1");
    REQUIRE(at(wb, 0, "B3").formula().cached);
    CHECK(*at(wb, 0, "B3").formula().cached == CellValue::number(9));

    auto groups = run_inspection(wb, RuleConfig::config1()).groups;
    REQUIRE_FALSE(groups.empty());
    CHECK(groups[0].members.size() == 5);
}

TEST_CASE("non-ZIP input is a format error") {
    CHECK_THROWS_AS(load_xlsx(data_path("not_a_zip.xlsx")), FormatError);
    CHECK_THROWS_AS(load_xlsx(data_path("missing.xlsx")), IoError);
    std::vector<std::string> warnings;
    CHECK_THROWS_AS(load_xlsx_bytes("", warnings), FormatError);
    CHECK_THROWS_AS(load_xlsx_bytes(std::string("PK\x03\x04", 4), warnings), FormatError);
}

TEST_CASE("cell types, stored entries and absolute part names") {
    std::vector<std::string> warnings;
    Workbook wb = load_xlsx(data_path("features.xlsx"), warnings);
    REQUIRE(wb.sheet_count() == 2);
    CHECK(wb.sheet(0).name() == "My Data");
    CHECK(at(wb, 0, "A1").literal() == CellValue::text("inline & text"));
    CHECK(at(wb, 0, "A2").literal() == CellValue::boolean(false));
    CHECK(at(wb, 0, "A3").literal() == CellValue::error("#DIV/0!"));
    CHECK(at(wb, 0, "A4").is_formula());
    CHECK(*at(wb, 0, "A4").formula().cached == CellValue::text("inline & text!"));
    CHECK(at(wb, 0, "A6").literal() == CellValue::number(150));
    CHECK(at(wb, 0, "A7").literal() == CellValue::number(-0.25));
    CHECK(at(wb, 0, "A8").literal() == CellValue::text("Hello World"));
    CHECK(at(wb, 0, "A9").literal() == CellValue::text("Kana"));
    CHECK(at(wb, 1, "B2").formula().source == "='My Data'!A6*2");

    // a bad formula is kept as text and reported, not fatal
    CHECK(at(wb, 0, "A5").literal() == CellValue::text("=SUM(A6:A7"));
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("A5") != std::string::npos);
}

TEST_CASE("cells without r attributes are placed in sequence") {
    Workbook wb = load_xlsx(data_path("no_refs.xlsx"));
    CHECK(at(wb, 0, "A1").literal() == CellValue::number(1));
    CHECK(at(wb, 0, "B1").literal() == CellValue::number(2));
    CHECK(at(wb, 0, "C1").formula().source == "=A1+B1");
}

TEST_CASE("xlsx and fixture versions give identical reports") {
    std::vector<std::string> warnings;
    Workbook from_xlsx = load_xlsx(data_path("parity.xlsx"), warnings);
    Workbook from_fixture = load_fixture(data_path("parity.fixture"));
    for (const auto& config : {RuleConfig::config1(), RuleConfig::config2()}) {
        CHECK(write_report(run_inspection(from_xlsx, config), ReportFormat::Json) ==
              write_report(run_inspection(from_fixture, config), ReportFormat::Json));
    }
}
