#include "aadg/pipeline/validate.hpp"

#include <fstream>
#include <set>

#include "aadg/audio/ops.hpp"
#include "aadg/audio/wav.hpp"
#include "aadg/canonical_json.hpp"
#include "aadg/dataset/manifest.hpp"
#include "aadg/errors.hpp"
#include "aadg/verify/verify.hpp"

namespace aadg::pipeline {

nlohmann::json ValidationReport::to_json() const {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& i : issues)
        items.push_back({{"record_id", i.record_id}, {"check", i.check}, {"detail", i.detail}});
    return {{"records_checked", records_checked},
            {"records_failed", records_failed},
            {"partial_lines", partial_lines},
            {"ok", ok()},
            {"issues", items},
            {"warnings", warnings}};
}

namespace {

void check_wav(const std::filesystem::path& root, const std::string& rel, const std::string& rid,
               const char* what, std::vector<RecordIssue>& issues) {
    const auto path = root / rel;
    if (!std::filesystem::exists(path)) {
        issues.push_back({rid, "missing_file", std::string(what) + ": " + rel});
        return;
    }
    try {
        auto clip = aadg::audio::read_wav(path);
        if (clip.empty()) {
            issues.push_back({rid, "empty_audio", rel});
            return;
        }
        double pk = aadg::audio::peak(clip);
        if (pk > 1.0 + 1e-6)
            issues.push_back({rid, "peak_bound", rel + " peaks at " + std::to_string(pk)});
    } catch (const Error& e) {
        issues.push_back({rid, "unreadable_wav", rel + ": " + e.what()});
    }
}

} // namespace

ValidationReport validate_dataset(const std::filesystem::path& root) {
    ValidationReport report;
    auto manifest = dataset::load_manifest(root);
    report.partial_lines = manifest.partial_lines;
    report.warnings = manifest.warnings;

    if (manifest.schema_version != dataset::kSchemaVersion) {
        report.issues.push_back({"", "schema_version",
                                 "expected '" + std::string(dataset::kSchemaVersion) + "', found '" +
                                     manifest.schema_version + "'"});
    }

    std::set<std::string> seen_ids;
    for (const auto& record : manifest.records) {
        const std::string& rid = record.record_id;
        auto before = report.issues.size();
        ++report.records_checked;

        if (!seen_ids.insert(rid).second)
            report.issues.push_back({rid, "duplicate_id", "record id appears twice in the manifest"});

        // the complete metadata element set
        auto require_text = [&](const std::string& value, const char* field) {
            if (value.empty())
                report.issues.push_back({rid, "missing_metadata", std::string(field) + " is empty"});
        };
        require_text(record.scenario, "scenario");
        require_text(record.summary, "summary");
        require_text(record.anomaly, "anomaly");
        require_text(record.anomaly_rationale, "anomaly_rationale");
        if (record.components.empty())
            report.issues.push_back({rid, "missing_metadata", "components list is empty"});
        for (std::size_t i = 0; i < record.components.size(); ++i)
            if (record.components[i].description.empty())
                report.issues.push_back({rid, "missing_metadata",
                                         "components[" + std::to_string(i) + "].description is empty"});
        if (record.order.empty())
            report.issues.push_back({rid, "missing_metadata", "order is empty"});
        if (record.merge_types.empty())
            report.issues.push_back({rid, "missing_metadata", "merge_types is empty"});
        if (record.ledger.entries.empty())
            report.issues.push_back({rid, "missing_metadata", "ledger has no timestamps"});
        require_text(record.final_wav_path, "final_wav_path");

        const std::size_t n = record.components.size();
        if (record.order.size() != n || record.merge_types.size() != n)
            report.issues.push_back(
                {rid, "length_mismatch",
                 "components=" + std::to_string(n) + " order=" + std::to_string(record.order.size()) +
                     " merge_types=" + std::to_string(record.merge_types.size())});
        if (!plan::is_permutation(record.order, n))
            report.issues.push_back({rid, "not_permutation", "order is not a permutation"});
        for (std::size_t i = 0; i < record.merge_types.size(); ++i)
            if (!plan::is_known_merge_type(record.merge_types[i]))
                report.issues.push_back({rid, "unknown_merge_type",
                                         "merge_types[" + std::to_string(i) + "]='" +
                                             record.merge_types[i] + "'"});

        for (const auto& issue : dataset::ledger_issues(record.ledger, n))
            report.issues.push_back({rid, "ledger", issue});

        if (record.sample_rate <= 0)
            report.issues.push_back({rid, "sample_rate", std::to_string(record.sample_rate)});

        check_wav(root, record.final_wav_path, rid, "final mix", report.issues);
        for (const auto& c : record.components)
            check_wav(root, c.wav_path, rid, "component", report.issues);

        // record.json must exist and agree with the manifest line
        const auto rjson = dataset::record_dir(root, rid) / "record.json";
        if (!std::filesystem::exists(rjson)) {
            report.issues.push_back({rid, "missing_file", "record.json"});
        } else {
            std::ifstream in(rjson, std::ios::binary);
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            while (!text.empty() && text.back() == '\n') text.pop_back();
            if (text != canonical_json(dataset::to_json(record)))
                report.issues.push_back(
                    {rid, "record_mismatch", "record.json differs from the manifest line"});
        }

        if (report.issues.size() != before) ++report.records_failed;
    }
    return report;
}

} // namespace aadg::pipeline
