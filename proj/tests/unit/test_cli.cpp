#include "cellcheck/cli.hpp"
#include "test_support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace cellcheck;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() / ("cellcheck-cli-" + std::to_string(::getpid()) + "-" +
                                             std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path_ / name, std::ios::binary) << text;
        return (path_ / name).string();
    }
    std::string path() const { return path_.string(); }

private:
    fs::path path_;
};

const char* kGrades =
    "sheet Grades\n"
    "Grades!A1=2\nGrades!A2=3\nGrades!B1=1\nGrades!B2=3\n"
    "Grades!C1==ROUND((A1*B1+A2*B2)/4,1)\n"
    "Grades!C2==A1+1\n";

const char* kScenarios =
    "scenario base\nexpect Grades!C1 = 2.8\n"
    "scenario raised\ninput Grades!A1 = 4\nexpect Grades!C1 = 3.3\nexpect Grades!C2 = 9\n"
    "scenario other\ninput Grades!B1 = 3\nexpect C1 = 3.8\n";

}  // namespace

TEST_CASE("inspect with preset and json") {
    TempDir dir;
    auto wb = dir.write("f.fixture", kGrades);
    Run r = cli({"inspect", wb, "--preset", "config2", "--format", "json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["config"] == "config2");
    CHECK(j["formula_count"] == 2);

    Run table = cli({"inspect", wb});
    CHECK(table.code == 0);
    CHECK(table.out.find("configuration") != std::string::npos);
    CHECK(table.out.find("config1") != std::string::npos);

    Run before_subcommand = cli({"--format", "json", "inspect", wb});
    CHECK(before_subcommand.code == 0);
    CHECK(before_subcommand.out.front() == '{');
}

TEST_CASE("test exits 1 when a scenario fails") {
    TempDir dir;
    auto wb = dir.write("f.fixture", kGrades);
    auto scenarios = dir.write("s.txt", kScenarios);
    Run r = cli({"test", wb, "--scenarios", scenarios});
    CHECK(r.code == 1);
    CHECK(r.out.find("failed in # of scenarios: 1\n") != std::string::npos);
    CHECK(r.out.find("# of wrong results / scenario: 0,1,0\n") != std::string::npos);

    auto passing = dir.write("p.txt", "scenario base\nexpect Grades!C1 = 2.8\n");
    CHECK(cli({"test", wb, "--scenarios", passing}).code == 0);

    auto missing = dir.write("m.txt", "scenario base\ninput Weights!A1 = 1\nexpect Grades!C1 = 2.8\n");
    Run x = cli({"test", wb, "--scenarios", missing});
    CHECK(x.code == 1);
    CHECK(x.out.find("failed in # of scenarios: X") != std::string::npos);
}

TEST_CASE("metrics and compare") {
    TempDir dir;
    auto a = dir.write("a.fixture", "S!A1=1\nS!A2=2\n");
    auto b = dir.write("b.fixture", "S!A1=1\nS!A2=2\nS!A3==A1*0.3\n");
    Run m = cli({"metrics", b, "--format", "json"});
    CHECK(m.code == 0);
    CHECK(nlohmann::json::parse(m.out)["cell_count"] == 3);

    Run c = cli({"compare", a, b});
    CHECK(c.code == 0);
    CHECK(c.out.find("relative cell increase") != std::string::npos);
    CHECK(c.out.find("50%") != std::string::npos);
}

TEST_CASE("config file equals the matching preset") {
    TempDir dir;
    auto wb = dir.write("f.fixture", kGrades);
    auto config = dir.write("c.conf",
                            "constants_ignored_values =\nconstants_ignored_functions =\n"
                            "complexity_max_operations = 5\ncomplexity_max_nesting = 2\n"
                            "direction_check_right_below = true\ndirection_check_sheet_order = true\n");
    Run preset = cli({"inspect", wb, "--preset", "config1", "--format", "json"});
    Run file = cli({"inspect", wb, "--config", config, "--format", "json"});
    CHECK(preset.code == 0);
    CHECK(file.code == 0);
    CHECK(preset.out == file.out);
}

TEST_CASE("corpus") {
    TempDir dir;
    dir.write("b.fixture", kGrades);
    dir.write("a.fixture", "S!A1=1\nS!B1==A1*2\n");
    dir.write("c.xlsx", "definitely not a zip");
    dir.write("notes.txt", "ignored");
    Run r = cli({"corpus", dir.path()});
    CHECK(r.code == 0);
    auto first_line = r.out.substr(0, r.out.find('\n'));
    auto a = first_line.find("a.fixture");
    auto b = first_line.find("b.fixture");
    auto c = first_line.find("c.xlsx");
    CHECK(a < b);
    CHECK(b < c);
    CHECK(first_line.find("notes.txt") == std::string::npos);
    CHECK(r.err.find("c.xlsx") != std::string::npos);

    auto scenarios = dir.write("s.scenarios", kScenarios);
    Run with = cli({"corpus", dir.path(), "--scenarios", scenarios, "--format", "json"});
    CHECK(with.code == 0);
    auto j = nlohmann::json::parse(with.out);
    REQUIRE(j["workbooks"].size() == 3);
    CHECK(j["workbooks"][0]["scenarios"]["failed"] == "X");
    CHECK(j["workbooks"][1]["scenarios"]["failed"] == 1);
    CHECK(j["workbooks"][2]["status"] == "X");
}

TEST_CASE("corpus over one file matches inspect") {
    TempDir dir;
    auto wb = dir.write("only.fixture", kGrades);
    auto single = nlohmann::json::parse(cli({"inspect", wb, "--format", "json"}).out);
    auto batch = nlohmann::json::parse(cli({"corpus", dir.path(), "--format", "json"}).out);
    const auto& entry = batch["workbooks"][0];
    CHECK(entry["cell_count"] == single["cell_count"]);
    CHECK(entry["formula_count"] == single["formula_count"]);
    CHECK(entry["rules"] == single["rules"]);
}

TEST_CASE("usage and input errors exit 2") {
    TempDir dir;
    auto wb = dir.write("f.fixture", kGrades);
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"inspect"}).code == 2);
    CHECK(cli({"inspect", wb, "--preset", "config3"}).code == 2);
    CHECK(cli({"inspect", wb, "--format", "xml"}).code == 2);
    CHECK(cli({"inspect", wb, "extra"}).code == 2);
    CHECK(cli({"test", wb}).code == 2);
    Run missing = cli({"inspect", dir.path() + "/nope.fixture"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("nope.fixture") != std::string::npos);
    auto broken = dir.write("broken.fixture", "S!A1==SUM(\n");
    CHECK(cli({"inspect", broken}).code == 2);
    auto config = dir.write("c.conf", "preset = config1\n");
    CHECK(cli({"inspect", wb, "--preset", "config2", "--config", config}).code == 2);
    CHECK(cli({"corpus", dir.path() + "/no-such-dir"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}
