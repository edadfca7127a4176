#include "cellcheck/corpus.hpp"

#include "cellcheck/errors.hpp"
#include "cellcheck/io.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace cellcheck {

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& directory) {
    std::error_code ec;
    std::filesystem::directory_iterator it(directory, ec);
    if (ec) throw IoError("cannot list " + directory.string() + ": " + ec.message());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : it) {
        if (!entry.is_regular_file()) continue;
        auto extension = entry.path().extension().string();
        if (iequals(extension, ".xlsx") || iequals(extension, ".fixture")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
    return files;
}

namespace {

struct Outcome {
    CorpusEntry entry;
    std::vector<std::string> warnings;
};

Outcome analyze_one(const std::filesystem::path& file, const RuleConfig& config,
                    const std::vector<TestScenario>* scenarios) {
    Outcome outcome;
    outcome.entry.name = file.filename().string();
    try {
        Workbook workbook = load_workbook(file, outcome.warnings);
        outcome.entry.inspection = run_inspection(workbook, config);
        if (scenarios && !scenarios->empty()) outcome.entry.scenarios = run_all(workbook, *scenarios);
    } catch (const Error& e) {
        outcome.entry.inspection.reset();
        outcome.entry.scenarios.reset();
        outcome.entry.error = e.what();
        outcome.warnings.push_back(outcome.entry.name + ": " + e.what());
    }
    return outcome;
}

}  // namespace

CorpusReport analyze_corpus(const std::vector<std::filesystem::path>& files, const RuleConfig& config,
                            const std::vector<TestScenario>* scenarios, std::vector<std::string>& warnings) {
    CorpusReport report;
    report.config_name = config.name;
    report.with_scenarios = scenarios && !scenarios->empty();
    std::size_t batch = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < files.size(); start += batch) {
        std::vector<std::future<Outcome>> pending;
        for (std::size_t i = start; i < std::min(files.size(), start + batch); ++i) {
            pending.push_back(std::async(std::launch::async, analyze_one, std::cref(files[i]), std::cref(config), scenarios));
        }
        for (auto& future : pending) {
            Outcome outcome = future.get();
            warnings.insert(warnings.end(), outcome.warnings.begin(), outcome.warnings.end());
            report.entries.push_back(std::move(outcome.entry));
        }
    }
    return report;
}

}  // namespace cellcheck
