#pragma once

#include <filesystem>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "aadg/dataset/record.hpp"

namespace aadg::dataset {

struct Manifest {
    std::string schema_version;
    std::string created_at;
    nlohmann::json config; // snapshot from the run that created the dataset
    std::vector<DatasetRecord> records;
    int partial_lines = 0; // unterminated tail segments skipped on load
    std::vector<std::string> warnings;
};

std::filesystem::path manifest_path(const std::filesystem::path& root);
std::filesystem::path record_dir(const std::filesystem::path& root, const std::string& record_id);

// JSON-Lines manifest: one header line, then one canonical-JSON line per
// record. A crash can only corrupt the unterminated tail, which load()
// reports as a partial line; everything before it always parses.
Manifest load_manifest(const std::filesystem::path& root);

std::set<std::string> completed_ids(const Manifest& manifest);

// Serializes appends from concurrent workers; record.json files are written
// atomically (temp file + rename), the manifest line with a single append.
class ManifestWriter {
public:
    // Creates root/records/ and the manifest header when absent; on an
    // existing dataset it loads the completed ids so resume can skip them.
    ManifestWriter(std::filesystem::path root, nlohmann::json config_snapshot);

    // Preconditions: every referenced audio file already exists under root.
    // Returns the record directory. Throws DuplicateRecordId, IoFailure.
    std::filesystem::path write_record(const DatasetRecord& record);

    std::set<std::string> ids() const;

private:
    std::filesystem::path root_;
    std::set<std::string> ids_;
    mutable std::mutex mu_;
};

} // namespace aadg::dataset
