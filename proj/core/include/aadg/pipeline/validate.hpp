#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace aadg::pipeline {

struct RecordIssue {
    std::string record_id;
    std::string check;
    std::string detail;
};

struct ValidationReport {
    int records_checked = 0;
    int records_failed = 0;
    int partial_lines = 0;
    std::vector<RecordIssue> issues;
    std::vector<std::string> warnings;

    bool ok() const { return records_failed == 0 && issues.empty(); }
    nlohmann::json to_json() const;
};

// Re-checks every record in the dataset against the full invariant set:
// manifest schema version, the complete metadata element set, plan list
// lengths and order permutation, known merge types, ledger coverage, file
// existence, WAV readability and peak bounds.
ValidationReport validate_dataset(const std::filesystem::path& root);

} // namespace aadg::pipeline
