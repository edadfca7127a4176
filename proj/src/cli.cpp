#include "cellcheck/cli.hpp"

#include "cellcheck/comparison.hpp"
#include "cellcheck/corpus.hpp"
#include "cellcheck/errors.hpp"
#include "cellcheck/evaluator.hpp"
#include "cellcheck/io.hpp"
#include "cellcheck/report.hpp"

#include <CLI11.hpp>

#include <ostream>

namespace cellcheck {

namespace {

constexpr std::size_t kMaxListedMismatches = 5;

struct Options {
    std::string preset = "config1";
    std::string config_file;
    std::string format = "table";
    std::string scenarios_file;
    std::vector<std::string> paths;
};

RuleConfig select_config(const Options& options) {
    if (!options.config_file.empty()) return load_config(options.config_file);
    auto config = RuleConfig::preset(options.preset);
    if (!config) throw FormatError("unknown preset '" + options.preset + "'");
    return *config;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
    for (const auto& w : warnings) err << "warning: " << w << "\n";
}

Workbook load(const std::string& path, std::ostream& err) {
    std::vector<std::string> warnings;
    Workbook workbook = load_workbook(path, warnings);
    print_warnings(warnings, err);
    return workbook;
}

void report_cached_mismatches(const Workbook& workbook, std::ostream& err) {
    auto mismatches = cross_check_cached_values(workbook);
    for (std::size_t i = 0; i < mismatches.size() && i < kMaxListedMismatches; ++i) {
        const auto& m = mismatches[i];
        err << "warning: " << workbook.describe(m.address) << " cached value " << m.cached.to_string()
            << " differs from evaluation: " << m.computed << "\n";
    }
    if (mismatches.size() > kMaxListedMismatches) {
        err << "warning: " << mismatches.size() - kMaxListedMismatches << " more cached-value mismatches\n";
    }
}

int dispatch(const std::string& command, const Options& options, std::ostream& out, std::ostream& err) {
    ReportFormat format = *parse_report_format(options.format);
    if (command == "metrics") {
        out << write_report(measure(load(options.paths.at(0), err)), format);
        return 0;
    }
    RuleConfig config = select_config(options);
    if (command == "inspect") {
        Workbook workbook = load(options.paths.at(0), err);
        report_cached_mismatches(workbook, err);
        out << write_report(run_inspection(workbook, config), format);
        return 0;
    }
    if (command == "compare") {
        Workbook before = load(options.paths.at(0), err);
        Workbook after = load(options.paths.at(1), err);
        out << write_report(compare_workbooks(before, after, config), format);
        return 0;
    }
    if (command == "test") {
        Workbook workbook = load(options.paths.at(0), err);
        auto scenarios = load_scenarios(options.scenarios_file);
        if (scenarios.empty()) throw FormatError(options.scenarios_file + ": no scenarios");
        ScenarioAggregate aggregate = run_all(workbook, scenarios);
        out << write_report(aggregate, format);
        return aggregate.not_applicable || aggregate.failed_count > 0 ? 1 : 0;
    }
    // corpus
    std::vector<TestScenario> scenarios;
    if (!options.scenarios_file.empty()) scenarios = load_scenarios(options.scenarios_file);
    auto files = corpus_files(options.paths.at(0));
    if (files.empty()) throw IoError("no .xlsx or .fixture files in " + options.paths.at(0));
    std::vector<std::string> warnings;
    CorpusReport report = analyze_corpus(files, config, scenarios.empty() ? nullptr : &scenarios, warnings);
    print_warnings(warnings, err);
    out << write_report(report, format);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options options;
    CLI::App app{"Best-practice inspection and scenario testing for spreadsheets", "cellcheck"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    auto* preset = app.add_option("--preset", options.preset, "Rule configuration preset")
                       ->check(CLI::IsMember({"config1", "config2"}));
    app.add_option("--config", options.config_file, "Rule configuration file")
        ->check(CLI::ExistingFile)
        ->excludes(preset);
    app.add_option("--format", options.format, "Output format")->check(CLI::IsMember({"json", "table"}));

    auto* inspect = app.add_subcommand("inspect", "Check one workbook against the best-practice rules");
    inspect->add_option("workbook", options.paths, "Workbook (.xlsx or fixture)")->required()->expected(1);

    auto* metrics = app.add_subcommand("metrics", "Count cells and formulae");
    metrics->add_option("workbook", options.paths, "Workbook (.xlsx or fixture)")->required()->expected(1);

    auto* test = app.add_subcommand("test", "Run test scenarios against a workbook");
    test->add_option("workbook", options.paths, "Workbook (.xlsx or fixture)")->required()->expected(1);
    test->add_option("--scenarios", options.scenarios_file, "Scenario file")->required()->check(CLI::ExistingFile);

    auto* compare = app.add_subcommand("compare", "Growth of a modified workbook against its original");
    compare->add_option("workbooks", options.paths, "Original and modified workbook")->required()->expected(2);

    auto* corpus = app.add_subcommand("corpus", "One column per workbook in a directory");
    corpus->add_option("directory", options.paths, "Directory of workbooks")->required()->expected(1);
    corpus->add_option("--scenarios", options.scenarios_file, "Scenario file")->check(CLI::ExistingFile);

    std::vector<std::string> argv_storage{"cellcheck"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return dispatch(command, options, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cellcheck
