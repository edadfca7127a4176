#pragma once

#include "cellcheck/report.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace cellcheck {

/// "*.xlsx" and "*.fixture" files directly inside `directory`, sorted by file name.
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& directory);

/// Inspects every file concurrently. A file that fails to load becomes an
/// entry with an error message instead of aborting the batch; its message is
/// also appended to `warnings`. Entries keep the order of `files`.
CorpusReport analyze_corpus(const std::vector<std::filesystem::path>& files, const RuleConfig& config,
                            const std::vector<TestScenario>* scenarios, std::vector<std::string>& warnings);

}  // namespace cellcheck
