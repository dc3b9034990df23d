#pragma once

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "aadg/audio/merge.hpp"
#include "aadg/verify/verify.hpp"

namespace aadg::dataset {

inline constexpr std::string_view kSchemaVersion = "aadg-record/1";

struct ComponentFile {
    std::string description;
    bool is_anomaly = false;
    std::string wav_path; // relative to the dataset root
};

struct VerificationSummary {
    int violations_count = 0;
    int judge_score = 0;
    std::vector<verify::AlignmentScore> alignment; // one per component
};

struct Provenance {
    std::uint64_t global_seed = 0;
    std::uint64_t record_seed = 0;
    std::vector<std::int64_t> component_seeds;
    std::string scenario_template_id;
    std::string extraction_template_id;
    std::string judge_template_id;
    std::string config_hash;
    std::map<std::string, int> attempt_counts;
    std::vector<double> overlay_rescale_factors; // one per merge step
};

// One generated example: audio file references plus the full metadata set
// (scenario, summary, anomaly, rationale, component descriptions, merge
// order, merge methods, timestamps) and provenance.
struct DatasetRecord {
    std::string record_id;
    std::string scenario;
    std::string summary;
    std::string anomaly;
    std::string anomaly_rationale;
    std::vector<ComponentFile> components;
    std::vector<int> order;
    std::vector<std::string> merge_types;
    audio::MergeLedger ledger;
    std::string final_wav_path; // relative to the dataset root
    int sample_rate = 16000;    // makes the ledger timestamps sample-exact
    VerificationSummary verification;
    Provenance provenance;
};

nlohmann::json to_json(const DatasetRecord& record);
// Structural parse; throws aadg::Error with a field-level message on
// missing or mistyped fields.
DatasetRecord record_from_json(const nlohmann::json& j);

// MergeLedger invariant problems (ordering, gaps, bounds); empty means ok.
std::vector<std::string> ledger_issues(const audio::MergeLedger& ledger, std::size_t component_count);

} // namespace aadg::dataset
