#include "cellcheck/rules.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace cellcheck;

namespace {

std::set<CellAddress> locations(const std::vector<Violation>& violations) {
    std::set<CellAddress> out;
    for (const auto& v : violations) out.insert(v.location);
    return out;
}

bool subset(const std::set<CellAddress>& a, const std::set<CellAddress>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("config monotonicity on random workbooks") {
    const auto c1 = RuleConfig::config1();
    const auto c2 = RuleConfig::config2();
    for (std::uint32_t seed = 1; seed <= 200; ++seed) {
        Workbook wb = testing::fixture(testing::random_workbook_fixture(seed));
        CAPTURE(seed);
        CHECK(subset(locations(check_constants(wb, c2)), locations(check_constants(wb, c1))));
        CHECK(subset(locations(check_complexity(wb, c1)), locations(check_complexity(wb, c2))));
        CHECK(check_reading_direction(wb, c1) == check_reading_direction(wb, c2));
    }
}

TEST_CASE("per-formula counting keeps ratios within [0, 1]") {
    for (std::uint32_t seed = 500; seed < 600; ++seed) {
        Workbook wb = testing::fixture(testing::random_workbook_fixture(seed));
        for (const auto& config : {RuleConfig::config1(), RuleConfig::config2()}) {
            auto report = run_inspection(wb, config);
            for (RuleId rule : kAllRules) {
                const auto& stats = report.stats(rule);
                CHECK(stats.violation_count <= report.formula_count);
                if (report.formula_count == 0) {
                    CHECK_FALSE(stats.ratio);
                } else {
                    REQUIRE(stats.ratio);
                    CHECK(*stats.ratio >= 0.0);
                    CHECK(*stats.ratio <= 1.0);
                }
            }
            for (const auto& v : report.violations) {
                const CellContent* content = wb.find(v.location);
                REQUIRE(content);
                CHECK(content->is_formula());
            }
            CHECK(report.cell_count >= report.formula_count);
        }
    }
}

TEST_CASE("grouping partitions 1,000 random violation sets") {
    Workbook wb = testing::fixture(testing::random_workbook_fixture(77));
    std::vector<CellAddress> formula_cells;
    wb.for_each_cell([&](const CellAddress& a, const CellContent& c) {
        if (c.is_formula()) formula_cells.push_back(a);
    });
    REQUIRE(formula_cells.size() >= 5);

    testing::AstGenerator gen(31337);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Violation> violations;
        for (CellAddress a : formula_cells) {
            for (RuleId rule : kAllRules) {
                if (gen.chance(35)) violations.push_back({rule, a, "d"});
            }
        }
        std::shuffle(violations.begin(), violations.end(), gen.rng());
        auto groups = group_violations(violations, wb);

        std::size_t members = 0;
        std::map<std::pair<RuleId, CellAddress>, int> seen;
        std::set<std::pair<RuleId, std::string>> keys;
        for (const auto& g : groups) {
            REQUIRE_FALSE(g.members.empty());
            CHECK(keys.insert({g.rule, g.signature}).second);
            for (std::size_t i = 0; i < g.members.size(); ++i) {
                const auto& m = g.members[i];
                CHECK(m.rule == g.rule);
                CHECK(normalize_r1c1(wb.find(m.location)->formula().ast, m.location) == g.signature);
                if (i > 0) CHECK(g.members[i - 1].location < m.location);
                ++seen[{m.rule, m.location}];
            }
            members += g.members.size();
        }
        CHECK(members == violations.size());
        for (const auto& v : violations) CHECK(seen[{v.rule, v.location}] == 1);
    }
}
