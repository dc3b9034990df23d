#include "aadg/dataset/record.hpp"

#include <cmath>

#include "aadg/errors.hpp"

namespace aadg::dataset {

nlohmann::json to_json(const DatasetRecord& r) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : r.components)
        comps.push_back(
            {{"description", c.description}, {"is_anomaly", c.is_anomaly}, {"wav_path", c.wav_path}});

    nlohmann::json ledger_entries = nlohmann::json::array();
    for (const auto& e : r.ledger.entries)
        ledger_entries.push_back(
            {{"component_index", e.component_index}, {"start_s", e.start_s}, {"end_s", e.end_s}});

    nlohmann::json alignment = nlohmann::json::array();
    for (const auto& a : r.verification.alignment)
        alignment.push_back({{"cosine", a.cosine},
                             {"regularized", a.regularized},
                             {"alpha", a.alpha},
                             {"beta", a.beta},
                             {"pass", a.pass}});

    return {{"record_id", r.record_id},
            {"scenario", r.scenario},
            {"summary", r.summary},
            {"anomaly", r.anomaly},
            {"anomaly_rationale", r.anomaly_rationale},
            {"components", comps},
            {"order", r.order},
            {"merge_types", r.merge_types},
            {"ledger",
             {{"entries", ledger_entries}, {"total_duration_s", r.ledger.total_duration_s}}},
            {"final_wav_path", r.final_wav_path},
            {"sample_rate", r.sample_rate},
            {"verification",
             {{"violations_count", r.verification.violations_count},
              {"judge_score", r.verification.judge_score},
              {"alignment", alignment}}},
            {"provenance",
             {{"global_seed", r.provenance.global_seed},
              {"record_seed", r.provenance.record_seed},
              {"component_seeds", r.provenance.component_seeds},
              {"scenario_template_id", r.provenance.scenario_template_id},
              {"extraction_template_id", r.provenance.extraction_template_id},
              {"judge_template_id", r.provenance.judge_template_id},
              {"config_hash", r.provenance.config_hash},
              {"attempt_counts", r.provenance.attempt_counts},
              {"overlay_rescale_factors", r.provenance.overlay_rescale_factors}}}};
}

namespace {

const nlohmann::json& need(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw Error(std::string("record: missing field '") + key + "'");
    return *it;
}

} // namespace

DatasetRecord record_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error("record: not a JSON object");
    try {
        DatasetRecord r;
        r.record_id = need(j, "record_id").get<std::string>();
        r.scenario = need(j, "scenario").get<std::string>();
        r.summary = need(j, "summary").get<std::string>();
        r.anomaly = need(j, "anomaly").get<std::string>();
        r.anomaly_rationale = need(j, "anomaly_rationale").get<std::string>();
        for (const auto& cj : need(j, "components")) {
            ComponentFile c;
            c.description = need(cj, "description").get<std::string>();
            c.is_anomaly = need(cj, "is_anomaly").get<bool>();
            c.wav_path = need(cj, "wav_path").get<std::string>();
            r.components.push_back(std::move(c));
        }
        r.order = need(j, "order").get<std::vector<int>>();
        r.merge_types = need(j, "merge_types").get<std::vector<std::string>>();
        const auto& lj = need(j, "ledger");
        for (const auto& ej : need(lj, "entries")) {
            audio::LedgerEntry e;
            e.component_index = need(ej, "component_index").get<int>();
            e.start_s = need(ej, "start_s").get<double>();
            e.end_s = need(ej, "end_s").get<double>();
            r.ledger.entries.push_back(e);
        }
        r.ledger.total_duration_s = need(lj, "total_duration_s").get<double>();
        r.final_wav_path = need(j, "final_wav_path").get<std::string>();
        r.sample_rate = need(j, "sample_rate").get<int>();
        const auto& vj = need(j, "verification");
        r.verification.violations_count = need(vj, "violations_count").get<int>();
        r.verification.judge_score = need(vj, "judge_score").get<int>();
        for (const auto& aj : need(vj, "alignment")) {
            verify::AlignmentScore a;
            a.cosine = need(aj, "cosine").get<double>();
            a.regularized = need(aj, "regularized").get<double>();
            a.alpha = need(aj, "alpha").get<double>();
            a.beta = need(aj, "beta").get<double>();
            a.pass = need(aj, "pass").get<bool>();
            r.verification.alignment.push_back(a);
        }
        const auto& pj = need(j, "provenance");
        r.provenance.global_seed = need(pj, "global_seed").get<std::uint64_t>();
        r.provenance.record_seed = need(pj, "record_seed").get<std::uint64_t>();
        r.provenance.component_seeds = need(pj, "component_seeds").get<std::vector<std::int64_t>>();
        r.provenance.scenario_template_id = need(pj, "scenario_template_id").get<std::string>();
        r.provenance.extraction_template_id = need(pj, "extraction_template_id").get<std::string>();
        r.provenance.judge_template_id = need(pj, "judge_template_id").get<std::string>();
        r.provenance.config_hash = need(pj, "config_hash").get<std::string>();
        r.provenance.attempt_counts = need(pj, "attempt_counts").get<std::map<std::string, int>>();
        r.provenance.overlay_rescale_factors =
            need(pj, "overlay_rescale_factors").get<std::vector<double>>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("record: malformed field: ") + e.what());
    }
}

std::vector<std::string> ledger_issues(const audio::MergeLedger& ledger,
                                       std::size_t component_count) {
    std::vector<std::string> issues;
    constexpr double kTol = 1e-6;

    if (ledger.entries.size() != component_count)
        issues.push_back("ledger has " + std::to_string(ledger.entries.size()) + " entries for " +
                         std::to_string(component_count) + " components");

    std::vector<bool> seen(component_count, false);
    for (const auto& e : ledger.entries) {
        if (e.component_index < 0 || static_cast<std::size_t>(e.component_index) >= component_count) {
            issues.push_back("ledger entry references component " + std::to_string(e.component_index));
            continue;
        }
        if (seen[static_cast<std::size_t>(e.component_index)])
            issues.push_back("component " + std::to_string(e.component_index) + " appears twice");
        seen[static_cast<std::size_t>(e.component_index)] = true;
        if (!(e.start_s < e.end_s))
            issues.push_back("entry for component " + std::to_string(e.component_index) +
                             " has start >= end");
        if (e.start_s < -kTol || e.end_s > ledger.total_duration_s + kTol)
            issues.push_back("entry for component " + std::to_string(e.component_index) +
                             " lies outside [0, total]");
    }

    // sorted by start, and the union of intervals covers [0, total] with no gaps
    double covered_to = 0.0;
    double prev_start = -1.0;
    for (const auto& e : ledger.entries) {
        if (e.start_s < prev_start - kTol) {
            issues.push_back("ledger entries are not sorted by start time");
            break;
        }
        prev_start = e.start_s;
        if (e.start_s > covered_to + kTol) {
            issues.push_back("coverage gap at " + std::to_string(covered_to) + " s");
            break;
        }
        if (e.end_s > covered_to) covered_to = e.end_s;
    }
    if (issues.empty() && std::fabs(covered_to - ledger.total_duration_s) > kTol)
        issues.push_back("coverage ends at " + std::to_string(covered_to) + " s of " +
                         std::to_string(ledger.total_duration_s) + " s");
    return issues;
}

} // namespace aadg::dataset
